use std::collections::HashSet;

use super::family::Sccs;
use super::mixed::parse_symbol;
use super::node::{edge_symbol, Mark, MarkedGraph};
use crate::error::{Error, Result};

/// One traversed edge: the node it arrives at and the marks at the departure and
/// arrival ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub to: usize,
    pub mark_from: Mark,
    pub mark_to: Mark,
}

/// An alternating node/edge sequence `v0 *-* v1 *-* ... *-* vn`, `n >= 0`.
///
/// The derived ordering compares start nodes, then steps in order, so sorting walks
/// sorts them lexicographically by node sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    start: usize,
    steps: Vec<Step>,
}

/// Collider classification of a walk position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Collider,
    NonCollider,
}

impl Walk {
    pub fn trivial(v: usize) -> Self {
        Walk {
            start: v,
            steps: Vec::new(),
        }
    }

    pub fn new(start: usize, steps: Vec<Step>) -> Self {
        Walk { start, steps }
    }

    /// Parses `a -> b <-> c -- d` against the node names of `g`.
    pub fn parse<G: MarkedGraph>(g: &G, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens.len().is_multiple_of(2) {
            return Err(Error::InvalidWalk(format!("cannot parse `{text}`")));
        }
        let mut walk = Walk::trivial(g.index_of(tokens[0])?);
        for pair in tokens[1..].chunks(2) {
            let (mf, mt) = parse_symbol(pair[0])
                .ok_or_else(|| Error::InvalidWalk(format!("unknown edge `{}`", pair[0])))?;
            walk.push(Step {
                to: g.index_of(pair[1])?,
                mark_from: mf,
                mark_to: mt,
            });
        }
        walk.check(g)?;
        Ok(walk)
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn node(&self, k: usize) -> usize {
        if k == 0 {
            self.start
        } else {
            self.steps[k - 1].to
        }
    }

    pub fn nodes(&self) -> Vec<usize> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.to))
            .collect()
    }

    pub fn is_path(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.steps.len() + 1);
        self.nodes().into_iter().all(|v| seen.insert(v))
    }

    /// Mark at `v_k` of the edge arriving from `v_{k-1}`.
    pub fn mark_before(&self, k: usize) -> Option<Mark> {
        (k > 0).then(|| self.steps[k - 1].mark_to)
    }

    /// Mark at `v_k` of the edge leaving towards `v_{k+1}`.
    pub fn mark_after(&self, k: usize) -> Option<Mark> {
        self.steps.get(k).map(|s| s.mark_from)
    }

    /// True iff the walk has an edge and its first edge has an arrowhead at the start.
    pub fn is_into_start(&self) -> bool {
        self.mark_after(0) == Some(Mark::Arrowhead)
    }

    /// True iff the walk has an edge and its last edge has an arrowhead at the end.
    pub fn is_into_end(&self) -> bool {
        self.steps
            .last()
            .is_some_and(|s| s.mark_to == Mark::Arrowhead)
    }

    pub fn reversed(&self) -> Walk {
        let nodes = self.nodes();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .rev()
            .map(|(i, s)| Step {
                to: nodes[i],
                mark_from: s.mark_to,
                mark_to: s.mark_from,
            })
            .collect();
        Walk {
            start: self.end(),
            steps,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Walk {
        assert_eq!(self.end(), other.start, "walks do not meet");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Walk {
            start: self.start,
            steps,
        }
    }

    /// Sub-walk between positions `i` and `j` inclusive.
    pub fn slice(&self, i: usize, j: usize) -> Walk {
        Walk {
            start: self.node(i),
            steps: self.steps[i..j].to_vec(),
        }
    }

    /// Checks that every step is an edge of `g`.
    pub fn check<G: MarkedGraph>(&self, g: &G) -> Result<()> {
        let n = g.node_count();
        if self.start >= n {
            return Err(Error::InvalidWalk(format!(
                "node #{} out of range",
                self.start
            )));
        }
        let mut at = self.start;
        for s in &self.steps {
            if s.to >= n || !g.has_edge(at, s.to, s.mark_from, s.mark_to) {
                return Err(Error::InvalidWalk(format!(
                    "no edge {} {} #{}",
                    g.name(at),
                    edge_symbol(s.mark_from, s.mark_to),
                    s.to
                )));
            }
            at = s.to;
        }
        Ok(())
    }

    pub fn display<G: MarkedGraph>(&self, g: &G) -> String {
        let mut out = g.name(self.start).to_string();
        for s in &self.steps {
            out.push(' ');
            out.push_str(edge_symbol(s.mark_from, s.mark_to));
            out.push(' ');
            out.push_str(g.name(s.to));
        }
        out
    }

    /// Collider status per position; endpoints count as non-colliders.
    pub fn positions(&self) -> Vec<Position> {
        (0..=self.len())
            .map(|k| match (self.mark_before(k), self.mark_after(k)) {
                (Some(Mark::Arrowhead), Some(Mark::Arrowhead)) => Position::Collider,
                _ => Position::NonCollider,
            })
            .collect()
    }

    /// Splits a walk into maximal runs of consecutive nodes sharing a strongly
    /// connected component.
    pub fn segments(&self, sccs: &Sccs) -> SegmentPartition {
        let nodes = self.nodes();
        let mut segments: Vec<Segment> = Vec::new();
        for (k, &v) in nodes.iter().enumerate() {
            let c = sccs.component_of(v);
            match segments.last_mut() {
                Some(seg) if seg.component == c => seg.last = k,
                _ => segments.push(Segment {
                    first: k,
                    last: k,
                    component: c,
                }),
            }
        }
        SegmentPartition { segments }
    }
}

/// Positions `first..=last` of a walk lying in one strongly connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub first: usize,
    pub last: usize,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentPartition {
    pub segments: Vec<Segment>,
}

/// Collider status of every position of `walk`, after checking it against `g`.
pub fn collider_status<G: MarkedGraph>(g: &G, walk: &Walk) -> Result<Vec<Position>> {
    walk.check(g)?;
    Ok(walk.positions())
}
