use std::fmt;

use crate::error::{Error, Result};

/// A validated node name matching `[A-Za-z_][A-Za-z0-9_]*`.
///
/// Ordering is lexicographic on the name; graphs index their nodes in this order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(NodeId(name))
        } else {
            Err(Error::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// One end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Tail,
    Arrowhead,
}

impl Mark {
    pub fn is_arrowhead(self) -> bool {
        self == Mark::Arrowhead
    }

    pub fn is_tail(self) -> bool {
        self == Mark::Tail
    }
}

/// An edge seen from one of its endpoints: the other endpoint, the mark at the
/// near end and the mark at the far end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub other: usize,
    pub near: Mark,
    pub far: Mark,
}

/// The text symbol for an edge read from `from` to `to`.
pub fn edge_symbol(mark_from: Mark, mark_to: Mark) -> &'static str {
    match (mark_from, mark_to) {
        (Mark::Tail, Mark::Arrowhead) => "->",
        (Mark::Arrowhead, Mark::Tail) => "<-",
        (Mark::Arrowhead, Mark::Arrowhead) => "<->",
        (Mark::Tail, Mark::Tail) => "--",
    }
}

/// Read access shared by [`DirectedMixedGraph`](crate::DirectedMixedGraph) and
/// [`MixedGraph`](crate::MixedGraph). Every edge is identified by its two endpoints
/// and its two marks, which keeps parallel DMG edges distinguishable.
pub trait MarkedGraph {
    fn names(&self) -> &[NodeId];

    /// Edges at `v`, sorted by `(other, near, far)`.
    fn incident(&self, v: usize) -> &[Incidence];

    fn node_count(&self) -> usize {
        self.names().len()
    }

    fn name(&self, v: usize) -> &str {
        self.names()[v].as_str()
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.names()
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::UnknownNode(name.to_string()))
    }

    fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    fn has_edge(&self, v: usize, w: usize, near: Mark, far: Mark) -> bool {
        self.incident(v)
            .binary_search(&Incidence {
                other: w,
                near,
                far,
            })
            .is_ok()
    }

    fn is_adjacent(&self, v: usize, w: usize) -> bool {
        let inc = self.incident(v);
        let i = inc.partition_point(|e| e.other < w);
        inc.get(i).is_some_and(|e| e.other == w)
    }
}
