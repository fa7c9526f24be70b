//! Family relations: strongly connected components, ancestors, anteriors and
//! undirected neighborhoods, plus the collider distance metric.
//!
//! Node sets are passed as index slices and returned as sorted sets. The
//! `*_mask` variants return membership vectors for hot loops.

use std::collections::{BTreeSet, VecDeque};

use super::dmg::DirectedMixedGraph;
use super::mixed::MixedGraph;
use super::node::{Mark, MarkedGraph};
use super::walk::{Position, Walk};
use crate::error::{Error, Result};

/// Strongly connected components of the directed part of a DMG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sccs {
    component: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Sccs {
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn same(&self, v: usize, w: usize) -> bool {
        self.component[v] == self.component[w]
    }

    /// Classes sorted internally and ordered by their smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn members_of(&self, v: usize) -> &[usize] {
        &self.classes[self.component[v]]
    }
}

/// Tarjan's algorithm over directed edges; bidirected edges are ignored.
pub fn strongly_connected_components(g: &DirectedMixedGraph) -> Sccs {
    let n = g.node_count();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next child position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = g.children(v).get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut class = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        class.push(w);
                        if w == v {
                            break;
                        }
                    }
                    class.sort_unstable();
                    raw.push(class);
                }
            }
        }
    }

    raw.sort_unstable_by_key(|c| c[0]);
    let mut component = vec![0; n];
    for (i, class) in raw.iter().enumerate() {
        for &v in class {
            component[v] = i;
        }
    }
    Sccs {
        component,
        classes: raw,
    }
}

fn mask_to_set(mask: &[bool]) -> BTreeSet<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(v, &m)| m.then_some(v))
        .collect()
}

/// Reverse reachability closure: every node with a walk of allowed edges to a target.
fn closure<F, I>(n: usize, targets: &[usize], mut predecessors: F) -> Vec<bool>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &t in targets {
        if !seen[t] {
            seen[t] = true;
            queue.push_back(t);
        }
    }
    while let Some(v) = queue.pop_front() {
        for u in predecessors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

pub fn ancestors_mask(g: &DirectedMixedGraph, targets: &[usize]) -> Vec<bool> {
    closure(g.node_count(), targets, |v| g.parents(v).iter().copied())
}

/// Nodes with a directed walk (possibly trivial) into `targets`.
pub fn ancestors(g: &DirectedMixedGraph, targets: &[usize]) -> BTreeSet<usize> {
    mask_to_set(&ancestors_mask(g, targets))
}

pub fn descendants(g: &DirectedMixedGraph, sources: &[usize]) -> BTreeSet<usize> {
    mask_to_set(&closure(g.node_count(), sources, |v| {
        g.children(v).iter().copied()
    }))
}

pub fn mixed_ancestors_mask(h: &MixedGraph, targets: &[usize]) -> Vec<bool> {
    closure(h.node_count(), targets, |v| {
        h.incident(v)
            .iter()
            .filter(|e| e.near == Mark::Arrowhead && e.far == Mark::Tail)
            .map(|e| e.other)
            .collect::<Vec<_>>()
    })
}

/// Ancestors in a mixed graph, following directed edges only.
pub fn mixed_ancestors(h: &MixedGraph, targets: &[usize]) -> BTreeSet<usize> {
    mask_to_set(&mixed_ancestors_mask(h, targets))
}

pub fn anteriors_mask(h: &MixedGraph, targets: &[usize]) -> Vec<bool> {
    closure(h.node_count(), targets, |v| {
        h.incident(v)
            .iter()
            .filter(|e| e.far == Mark::Tail)
            .map(|e| e.other)
            .collect::<Vec<_>>()
    })
}

/// Nodes with an anterior path `v --* ... --* t` into `targets`: every edge has a
/// tail at its earlier endpoint.
pub fn anteriors(h: &MixedGraph, targets: &[usize]) -> BTreeSet<usize> {
    mask_to_set(&anteriors_mask(h, targets))
}

/// Nodes joined to `v` by undirected edges.
pub fn neighborhood(h: &MixedGraph, v: usize) -> BTreeSet<usize> {
    h.incident(v)
        .iter()
        .filter(|e| e.near == Mark::Tail && e.far == Mark::Tail)
        .map(|e| e.other)
        .collect()
}

/// True iff the undirected neighborhood of `v` is a clique of undirected edges.
pub fn neighborhood_complete(h: &MixedGraph, v: usize) -> bool {
    let nbh: Vec<usize> = neighborhood(h, v).into_iter().collect();
    nbh.iter()
        .enumerate()
        .all(|(i, &b)| nbh[i + 1..].iter().all(|&c| h.has_undirected(b, c)))
}

/// Length of the shortest directed path from each node into `z`, if any.
pub fn directed_distance_to(h: &MixedGraph, z: &[usize]) -> Vec<Option<usize>> {
    let n = h.node_count();
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &t in z {
        if dist[t].is_none() {
            dist[t] = Some(0);
            queue.push_back(t);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued nodes have a distance");
        for e in h.incident(v) {
            if e.near == Mark::Arrowhead && e.far == Mark::Tail && dist[e.other].is_none() {
                dist[e.other] = Some(d + 1);
                queue.push_back(e.other);
            }
        }
    }
    dist
}

/// Sum over the colliders of `path` of their directed distance to `z`.
///
/// Fails with a domain error when some collider has no directed path into `z`.
pub fn collider_distance_sum(h: &MixedGraph, path: &Walk, z: &[usize]) -> Result<usize> {
    path.check(h)?;
    if !path.is_path() {
        return Err(Error::InvalidWalk(
            "collider distance sum needs a path".into(),
        ));
    }
    let dist = directed_distance_to(h, z);
    let mut total = 0;
    for (k, pos) in path.positions().into_iter().enumerate() {
        if pos == Position::Collider {
            let v = path.node(k);
            total += dist[v].ok_or_else(|| {
                Error::Domain(format!(
                    "collider {} has no directed path into the target set",
                    h.name(v)
                ))
            })?;
        }
    }
    Ok(total)
}

/// Shortest directed path `from -> ... -> to` in a DMG, as a node sequence.
pub fn shortest_directed_path(
    g: &DirectedMixedGraph,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let n = g.node_count();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut at = to;
            while at != from {
                at = prev[at];
                path.push(at);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.children(v) {
            if !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
