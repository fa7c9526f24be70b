use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::node::{edge_symbol, Incidence, Mark, MarkedGraph, NodeId};
use crate::error::{Error, Result};

/// An edge of a mixed graph, stored with `a < b`.
///
/// `(Tail, Arrowhead)` is `a -> b`, `(Arrowhead, Tail)` is `a <- b`,
/// `(Arrowhead, Arrowhead)` is `a <-> b` and `(Tail, Tail)` is `a -- b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedEdge {
    pub a: usize,
    pub mark_at_a: Mark,
    pub b: usize,
    pub mark_at_b: Mark,
}

impl MixedEdge {
    /// Orders the endpoints, swapping marks along with them.
    pub fn normalized(self) -> Self {
        if self.a <= self.b {
            self
        } else {
            MixedEdge {
                a: self.b,
                mark_at_a: self.mark_at_b,
                b: self.a,
                mark_at_b: self.mark_at_a,
            }
        }
    }

    pub fn mark_at(&self, v: usize) -> Option<Mark> {
        if v == self.a {
            Some(self.mark_at_a)
        } else if v == self.b {
            Some(self.mark_at_b)
        } else {
            None
        }
    }
}

/// A graph with at most one edge per node pair and edge types `->`, `<-`, `<->`, `--`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    names: Vec<NodeId>,
    edges: BTreeMap<(usize, usize), (Mark, Mark)>,
    incident: Vec<Vec<Incidence>>,
}

impl MixedGraph {
    pub fn builder() -> MixedBuilder {
        MixedBuilder::default()
    }

    /// Builds a graph from string triples such as `("a", "->", "b")`.
    pub fn from_edges(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut b = MixedBuilder::default();
        for n in nodes {
            b = b.node(n);
        }
        for &(x, sym, y) in edges {
            let (mx, my) = parse_symbol(sym)
                .ok_or_else(|| Error::InvalidQuery(format!("unknown edge symbol `{sym}`")))?;
            b = b.edge(x, mx, y, my);
        }
        b.build()
    }

    /// `names` must be sorted and unique; keys satisfy `a < b` with marks `(at a, at b)`.
    pub(crate) fn from_indexed(
        names: Vec<NodeId>,
        edges: BTreeMap<(usize, usize), (Mark, Mark)>,
    ) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let mut incident = vec![Vec::new(); names.len()];
        for (&(a, b), &(ma, mb)) in &edges {
            debug_assert!(a < b && b < names.len());
            incident[a].push(Incidence {
                other: b,
                near: ma,
                far: mb,
            });
            incident[b].push(Incidence {
                other: a,
                near: mb,
                far: ma,
            });
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        MixedGraph {
            names,
            edges,
            incident,
        }
    }

    /// Marks `(at a, at b)` of the edge between `a` and `b`, if any.
    pub fn edge(&self, a: usize, b: usize) -> Option<(Mark, Mark)> {
        if a < b {
            self.edges.get(&(a, b)).copied()
        } else {
            self.edges.get(&(b, a)).map(|&(x, y)| (y, x))
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = MixedEdge> + '_ {
        self.edges.iter().map(|(&(a, b), &(ma, mb))| MixedEdge {
            a,
            mark_at_a: ma,
            b,
            mark_at_b: mb,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff `tail -> head` is present.
    pub fn has_directed(&self, tail: usize, head: usize) -> bool {
        self.edge(tail, head) == Some((Mark::Tail, Mark::Arrowhead))
    }

    pub fn has_bidirected(&self, a: usize, b: usize) -> bool {
        self.edge(a, b) == Some((Mark::Arrowhead, Mark::Arrowhead))
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.edge(a, b) == Some((Mark::Tail, Mark::Tail))
    }

    /// Unordered adjacent pairs `(a, b)` with `a < b`.
    pub fn adjacencies(&self) -> BTreeSet<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    /// Restricts to the edges whose endpoints are both in `keep`, reindexing nodes.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> MixedGraph {
        let order: Vec<usize> = keep.iter().copied().collect();
        let pos = |v: usize| order.binary_search(&v).ok();
        let names = order.iter().map(|&v| self.names[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &m)| Some(((pos(a)?, pos(b)?), m)))
            .collect();
        MixedGraph::from_indexed(names, edges)
    }

    pub fn display_edge(&self, e: MixedEdge) -> String {
        format!(
            "{} {} {}",
            self.names[e.a],
            edge_symbol(e.mark_at_a, e.mark_at_b),
            self.names[e.b]
        )
    }
}

impl MarkedGraph for MixedGraph {
    fn names(&self) -> &[NodeId] {
        &self.names
    }

    fn incident(&self, v: usize) -> &[Incidence] {
        &self.incident[v]
    }

    fn is_adjacent(&self, v: usize, w: usize) -> bool {
        self.edge(v, w).is_some()
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges().map(|e| self.display_edge(e)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Maps a text edge symbol to the marks `(at left, at right)`.
pub fn parse_symbol(sym: &str) -> Option<(Mark, Mark)> {
    match sym {
        "->" => Some((Mark::Tail, Mark::Arrowhead)),
        "<-" => Some((Mark::Arrowhead, Mark::Tail)),
        "<->" => Some((Mark::Arrowhead, Mark::Arrowhead)),
        "--" => Some((Mark::Tail, Mark::Tail)),
        _ => None,
    }
}

/// Name-based construction of a [`MixedGraph`].
#[derive(Debug, Default, Clone)]
pub struct MixedBuilder {
    nodes: BTreeSet<String>,
    edges: Vec<(String, Mark, String, Mark)>,
}

impl MixedBuilder {
    pub fn node(mut self, name: &str) -> Self {
        self.nodes.insert(name.to_string());
        self
    }

    pub fn edge(mut self, a: &str, mark_at_a: Mark, b: &str, mark_at_b: Mark) -> Self {
        self.nodes.insert(a.to_string());
        self.nodes.insert(b.to_string());
        self.edges
            .push((a.to_string(), mark_at_a, b.to_string(), mark_at_b));
        self
    }

    pub fn directed(self, tail: &str, head: &str) -> Self {
        self.edge(tail, Mark::Tail, head, Mark::Arrowhead)
    }

    pub fn bidirected(self, a: &str, b: &str) -> Self {
        self.edge(a, Mark::Arrowhead, b, Mark::Arrowhead)
    }

    pub fn undirected(self, a: &str, b: &str) -> Self {
        self.edge(a, Mark::Tail, b, Mark::Tail)
    }

    pub fn build(self) -> Result<MixedGraph> {
        let names = self
            .nodes
            .into_iter()
            .map(NodeId::new)
            .collect::<Result<Vec<_>>>()?;
        let index = |s: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(s))
                .expect("endpoint declared by builder")
        };
        let mut edges = BTreeMap::new();
        for (a, ma, b, mb) in &self.edges {
            if a == b {
                return Err(Error::SelfLoop(a.clone()));
            }
            let e = MixedEdge {
                a: index(a),
                mark_at_a: *ma,
                b: index(b),
                mark_at_b: *mb,
            }
            .normalized();
            if edges
                .insert((e.a, e.b), (e.mark_at_a, e.mark_at_b))
                .is_some()
            {
                return Err(Error::MultiEdge(
                    names[e.a].to_string(),
                    names[e.b].to_string(),
                ));
            }
        }
        Ok(MixedGraph::from_indexed(names, edges))
    }
}
