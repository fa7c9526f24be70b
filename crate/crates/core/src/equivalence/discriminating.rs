use std::collections::BTreeSet;

use crate::graph::{Mark, MarkedGraph, MixedGraph};

/// A path `(a, v0, .., vn, b, c)` with `a`, `c` non-adjacent where every `vk` is a
/// collider on the path and a parent of `c`. It discriminates `b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscriminatingPath {
    pub nodes: Vec<usize>,
}

impl DiscriminatingPath {
    pub fn a(&self) -> usize {
        self.nodes[0]
    }

    pub fn target(&self) -> usize {
        self.nodes[self.nodes.len() - 2]
    }

    pub fn c(&self) -> usize {
        self.nodes[self.nodes.len() - 1]
    }

    /// The nodes `v0, .., vn`.
    pub fn colliders(&self) -> &[usize] {
        &self.nodes[1..self.nodes.len() - 2]
    }

    /// Whether the target is a collider on this path in `h`.
    pub fn target_is_collider(&self, h: &MixedGraph) -> bool {
        let k = self.nodes.len() - 2;
        let b = self.nodes[k];
        let at_b = |other: usize| h.edge(b, other).map(|(m, _)| m);
        at_b(self.nodes[k - 1]) == Some(Mark::Arrowhead)
            && at_b(self.nodes[k + 1]) == Some(Mark::Arrowhead)
    }

    pub fn display(&self, h: &MixedGraph) -> String {
        let mut out = h.name(self.nodes[0]).to_string();
        for w in self.nodes.windows(2) {
            let (m0, m1) = h.edge(w[0], w[1]).expect("consecutive nodes are adjacent");
            out.push_str(&format!(
                " {} {}",
                crate::graph::node::edge_symbol(m0, m1),
                h.name(w[1])
            ));
        }
        out
    }
}

fn arrowhead_at(h: &MixedGraph, at: usize, other: usize) -> bool {
    h.edge(at, other).is_some_and(|(m, _)| m.is_arrowhead())
}

/// True iff `nodes` read as `(a, v0, .., vn, b, c)` is a discriminating path for `b`
/// in `h`. Malformed sequences, including non-adjacent consecutive nodes, give false.
pub fn is_discriminating(h: &MixedGraph, nodes: &[usize], b: usize) -> bool {
    let len = nodes.len();
    let n = h.node_count();
    if len < 4 || nodes[len - 2] != b || nodes.iter().any(|&v| v >= n) {
        return false;
    }
    let distinct: BTreeSet<usize> = nodes.iter().copied().collect();
    if distinct.len() != len {
        return false;
    }
    if !nodes.windows(2).all(|w| h.is_adjacent(w[0], w[1])) {
        return false;
    }
    let (a, c) = (nodes[0], nodes[len - 1]);
    if h.is_adjacent(a, c) {
        return false;
    }
    (1..len - 2).all(|k| {
        let v = nodes[k];
        arrowhead_at(h, v, nodes[k - 1]) && arrowhead_at(h, v, nodes[k + 1]) && h.has_directed(v, c)
    })
}

struct Search<'h> {
    h: &'h MixedGraph,
    max_colliders: Option<usize>,
    truncated: bool,
    out: Vec<DiscriminatingPath>,
}

impl Search<'_> {
    /// `rev` holds `c, b, vn, .., vk` with an arrowhead at `vk` towards `b`.
    fn extend(&mut self, rev: &mut Vec<usize>, on_path: &mut [bool]) {
        let c = rev[0];
        let vk = *rev.last().expect("nonempty");
        let colliders = rev.len() - 2;
        for e in self.h.incident(vk) {
            let u = e.other;
            if on_path[u] || !e.near.is_arrowhead() {
                continue;
            }
            if !self.h.is_adjacent(u, c) {
                let mut nodes: Vec<usize> = rev.iter().rev().copied().collect();
                nodes.insert(0, u);
                self.out.push(DiscriminatingPath { nodes });
            } else if e.far.is_arrowhead() && self.h.has_directed(u, c) {
                if self.max_colliders.is_some_and(|m| colliders >= m) {
                    self.truncated = true;
                    continue;
                }
                rev.push(u);
                on_path[u] = true;
                self.extend(rev, on_path);
                on_path[u] = false;
                rev.pop();
            }
        }
    }
}

fn search(
    h: &MixedGraph,
    for_node: Option<usize>,
    max_colliders: Option<usize>,
) -> (Vec<DiscriminatingPath>, bool) {
    let n = h.node_count();
    let mut s = Search {
        h,
        max_colliders,
        truncated: false,
        out: Vec::new(),
    };
    let mut on_path = vec![false; n];
    for c in 0..n {
        for eb in h.incident(c) {
            let b = eb.other;
            if for_node.is_some_and(|t| t != b) {
                continue;
            }
            for ev in h.incident(b) {
                let v = ev.other;
                if v == c || !ev.far.is_arrowhead() || !h.has_directed(v, c) {
                    continue;
                }
                let mut rev = vec![c, b, v];
                for &x in &rev {
                    on_path[x] = true;
                }
                s.extend(&mut rev, &mut on_path);
                for &x in &rev {
                    on_path[x] = false;
                }
            }
        }
    }
    s.out.sort();
    (s.out, s.truncated)
}

/// Every discriminating path of `h`, optionally only those for `for_node`, sorted by
/// node sequence.
pub fn discriminating_paths(h: &MixedGraph, for_node: Option<usize>) -> Vec<DiscriminatingPath> {
    search(h, for_node, None).0
}

/// Like [`discriminating_paths`] but with at most `max_colliders` nodes between `a`
/// and `b`. The flag is set when longer candidates were cut off.
pub fn discriminating_paths_bounded(
    h: &MixedGraph,
    for_node: Option<usize>,
    max_colliders: usize,
) -> (Vec<DiscriminatingPath>, bool) {
    search(h, for_node, Some(max_colliders))
}
