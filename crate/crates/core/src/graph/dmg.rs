use std::collections::BTreeSet;

use super::node::{Incidence, Mark, MarkedGraph, NodeId};
use crate::error::{Error, Result};

/// A directed mixed graph: directed edges and bidirected edges over named nodes.
/// Cycles are allowed, and a pair may carry `a -> b`, `b -> a` and `a <-> b` at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMixedGraph {
    names: Vec<NodeId>,
    directed: BTreeSet<(usize, usize)>,
    bidirected: BTreeSet<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    siblings: Vec<Vec<usize>>,
    incident: Vec<Vec<Incidence>>,
}

impl DirectedMixedGraph {
    pub fn builder() -> DmgBuilder {
        DmgBuilder::default()
    }

    /// Builds a graph from string slices. Edge endpoints are declared implicitly.
    pub fn from_edges(
        nodes: &[&str],
        directed: &[(&str, &str)],
        bidirected: &[(&str, &str)],
    ) -> Result<Self> {
        let mut b = DmgBuilder::default();
        for n in nodes {
            b = b.node(n);
        }
        for (t, h) in directed {
            b = b.directed(t, h);
        }
        for (x, y) in bidirected {
            b = b.bidirected(x, y);
        }
        b.build()
    }

    /// `names` must be sorted and unique; edges are index pairs into it.
    pub(crate) fn from_indexed(
        names: Vec<NodeId>,
        directed: BTreeSet<(usize, usize)>,
        bidirected: BTreeSet<(usize, usize)>,
    ) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let n = names.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        let mut siblings = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for &(t, h) in &directed {
            debug_assert!(t != h && t < n && h < n);
            children[t].push(h);
            parents[h].push(t);
            incident[t].push(Incidence {
                other: h,
                near: Mark::Tail,
                far: Mark::Arrowhead,
            });
            incident[h].push(Incidence {
                other: t,
                near: Mark::Arrowhead,
                far: Mark::Tail,
            });
        }
        let bidirected: BTreeSet<(usize, usize)> = bidirected
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        for &(a, b) in &bidirected {
            debug_assert!(a != b && b < n);
            siblings[a].push(b);
            siblings[b].push(a);
            for (x, y) in [(a, b), (b, a)] {
                incident[x].push(Incidence {
                    other: y,
                    near: Mark::Arrowhead,
                    far: Mark::Arrowhead,
                });
            }
        }
        for list in parents
            .iter_mut()
            .chain(children.iter_mut())
            .chain(siblings.iter_mut())
        {
            list.sort_unstable();
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        DirectedMixedGraph {
            names,
            directed,
            bidirected,
            parents,
            children,
            siblings,
            incident,
        }
    }

    /// Directed edges as `(tail, head)`, sorted.
    pub fn directed_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.directed
    }

    /// Bidirected edges as `(min, max)`, sorted.
    pub fn bidirected_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.bidirected
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn siblings(&self, v: usize) -> &[usize] {
        &self.siblings[v]
    }

    pub fn has_directed(&self, tail: usize, head: usize) -> bool {
        self.directed.contains(&(tail, head))
    }

    pub fn has_bidirected(&self, a: usize, b: usize) -> bool {
        self.bidirected.contains(&(a.min(b), a.max(b)))
    }

    pub fn edge_count(&self) -> usize {
        self.directed.len() + self.bidirected.len()
    }
}

impl MarkedGraph for DirectedMixedGraph {
    fn names(&self) -> &[NodeId] {
        &self.names
    }

    fn incident(&self, v: usize) -> &[Incidence] {
        &self.incident[v]
    }
}

/// Name-based construction of a [`DirectedMixedGraph`].
#[derive(Debug, Default, Clone)]
pub struct DmgBuilder {
    nodes: BTreeSet<String>,
    directed: Vec<(String, String)>,
    bidirected: Vec<(String, String)>,
}

impl DmgBuilder {
    pub fn node(mut self, name: &str) -> Self {
        self.nodes.insert(name.to_string());
        self
    }

    pub fn directed(mut self, tail: &str, head: &str) -> Self {
        self.nodes.insert(tail.to_string());
        self.nodes.insert(head.to_string());
        self.directed.push((tail.to_string(), head.to_string()));
        self
    }

    pub fn bidirected(mut self, a: &str, b: &str) -> Self {
        self.nodes.insert(a.to_string());
        self.nodes.insert(b.to_string());
        self.bidirected.push((a.to_string(), b.to_string()));
        self
    }

    pub fn build(self) -> Result<DirectedMixedGraph> {
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
        let mut directed = BTreeSet::new();
        for (t, h) in &self.directed {
            if t == h {
                return Err(Error::SelfLoop(t.clone()));
            }
            if !directed.insert((index(t), index(h))) {
                return Err(Error::DuplicateEdge(format!("{t} -> {h}")));
            }
        }
        let mut bidirected = BTreeSet::new();
        for (a, b) in &self.bidirected {
            if a == b {
                return Err(Error::SelfLoop(a.clone()));
            }
            let (i, j) = (index(a), index(b));
            if !bidirected.insert((i.min(j), i.max(j))) {
                return Err(Error::DuplicateEdge(format!("{a} <-> {b}")));
            }
        }
        Ok(DirectedMixedGraph::from_indexed(
            names, directed, bidirected,
        ))
    }
}

/// A DMG together with its selection nodes `S`. The observed nodes are the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextedDmg {
    pub graph: DirectedMixedGraph,
    selection: BTreeSet<usize>,
}

impl ContextedDmg {
    pub fn new(graph: DirectedMixedGraph, selection: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = selection.iter().find(|&&s| s >= graph.node_count()) {
            return Err(Error::UnknownNode(format!("#{bad}")));
        }
        if selection.len() == graph.node_count() {
            return Err(Error::InvalidQuery(
                "the observed node set must be nonempty".into(),
            ));
        }
        Ok(ContextedDmg { graph, selection })
    }

    pub fn with_selection_names(graph: DirectedMixedGraph, selection: &[&str]) -> Result<Self> {
        let sel = graph.indices_of(selection)?.into_iter().collect();
        ContextedDmg::new(graph, sel)
    }

    pub fn selection(&self) -> &BTreeSet<usize> {
        &self.selection
    }

    pub fn is_selection(&self, v: usize) -> bool {
        self.selection.contains(&v)
    }

    /// Observed node indices in ascending (lexicographic) order. Position `i` of this
    /// list is node `i` of any mixed graph built over the observed nodes.
    pub fn observed(&self) -> Vec<usize> {
        (0..self.graph.node_count())
            .filter(|v| !self.selection.contains(v))
            .collect()
    }

    pub fn observed_names(&self) -> Vec<NodeId> {
        self.observed()
            .into_iter()
            .map(|v| self.graph.names()[v].clone())
            .collect()
    }
}
