use std::collections::{BTreeSet, VecDeque};

use super::sigma::unblockable;
use super::SeparationQuery;
use crate::error::{Error, Result};
use crate::graph::family::{ancestors_mask, mixed_ancestors_mask, strongly_connected_components};
use crate::graph::{
    enumerate_simple_paths, DirectedMixedGraph, MarkedGraph, MixedGraph, Step, Walk,
};

fn check_pair<G: MarkedGraph>(g: &G, a: usize, b: usize) -> Result<()> {
    let n = g.node_count();
    if a >= n || b >= n {
        return Err(Error::UnknownNode(format!("#{}", a.max(b))));
    }
    if a == b {
        return Err(Error::InvalidQuery("endpoints must be distinct".into()));
    }
    Ok(())
}

/// Shortest inducing path between `a` and `b` in a mixed graph: every interior node is
/// a collider and an ancestor of `a` or `b`. Interior edges are then bidirected, so a
/// breadth-first search over admissible nodes finds one whenever any exists.
pub fn shortest_inducing_path(h: &MixedGraph, a: usize, b: usize) -> Result<Option<Walk>> {
    check_pair(h, a, b)?;
    if let Some(e) = h.incident(a).iter().find(|e| e.other == b) {
        return Ok(Some(Walk::new(
            a,
            vec![Step {
                to: b,
                mark_from: e.near,
                mark_to: e.far,
            }],
        )));
    }
    let mut admissible = mixed_ancestors_mask(h, &[a, b]);
    admissible[a] = false;
    admissible[b] = false;

    let n = h.node_count();
    let mut prev: Vec<Option<(usize, Step)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for e in h.incident(a) {
        if e.far.is_arrowhead() && admissible[e.other] && !seen[e.other] {
            seen[e.other] = true;
            prev[e.other] = Some((
                a,
                Step {
                    to: e.other,
                    mark_from: e.near,
                    mark_to: e.far,
                },
            ));
            queue.push_back(e.other);
        }
    }
    while let Some(c) = queue.pop_front() {
        for e in h.incident(c) {
            if !e.near.is_arrowhead() {
                continue;
            }
            let step = Step {
                to: e.other,
                mark_from: e.near,
                mark_to: e.far,
            };
            if e.other == b {
                let mut steps = vec![step];
                let mut at = c;
                while let Some((p, s)) = prev[at] {
                    steps.push(s);
                    at = p;
                }
                steps.reverse();
                return Ok(Some(Walk::new(a, steps)));
            }
            if e.far.is_arrowhead() && admissible[e.other] && !seen[e.other] {
                seen[e.other] = true;
                prev[e.other] = Some((c, step));
                queue.push_back(e.other);
            }
        }
    }
    Ok(None)
}

/// True iff some inducing path joins `a` and `b`. Adjacent pairs always qualify.
pub fn inducing_exists(h: &MixedGraph, a: usize, b: usize) -> Result<bool> {
    Ok(shortest_inducing_path(h, a, b)?.is_some())
}

/// All inducing paths between `a` and `b`, by enumeration, in lexicographic order.
pub fn inducing_paths(h: &MixedGraph, a: usize, b: usize) -> Result<Vec<Walk>> {
    check_pair(h, a, b)?;
    let anc = mixed_ancestors_mask(h, &[a, b]);
    Ok(enumerate_simple_paths(h, a, b)?
        .filter(|p| {
            (1..p.len()).all(|k| {
                p.mark_before(k).is_some_and(|m| m.is_arrowhead())
                    && p.mark_after(k).is_some_and(|m| m.is_arrowhead())
                    && anc[p.node(k)]
            })
        })
        .collect())
}

fn check_selection(g: &DirectedMixedGraph, s: &BTreeSet<usize>, a: usize, b: usize) -> Result<()> {
    check_pair(g, a, b)?;
    if let Some(&v) = s.iter().find(|&&v| v >= g.node_count()) {
        return Err(Error::UnknownNode(format!("#{v}")));
    }
    if s.contains(&a) || s.contains(&b) {
        return Err(Error::InvalidQuery(
            "endpoints of a σ-inducing path must not be selection nodes".into(),
        ));
    }
    Ok(())
}

/// True iff a σ-inducing path given `s` joins `a` and `b`, decided as σ-connectivity of
/// `a` and `b` given `Anc({a, b} ∪ s) ∖ {a, b}`, which contains `s`.
pub fn sigma_inducing_exists(
    g: &DirectedMixedGraph,
    s: &BTreeSet<usize>,
    a: usize,
    b: usize,
) -> Result<bool> {
    check_selection(g, s, a, b)?;
    let mut targets: Vec<usize> = s.iter().copied().collect();
    targets.extend([a, b]);
    let anc = ancestors_mask(g, &targets);
    let z = (0..g.node_count()).filter(|&v| anc[v] && v != a && v != b);
    let q = SeparationQuery::pair(a, b, z);
    Ok(!super::sigma_separated(g, &q)?.separated)
}

/// A σ-inducing path together with its end marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaInducingPath {
    pub path: Walk,
    /// Arrowhead at the first node.
    pub into_start: bool,
    /// Arrowhead at the last node.
    pub into_end: bool,
}

/// All σ-inducing paths between `a` and `b` given `s`: colliders lie in
/// `Anc({a, b} ∪ s)` and every interior non-collider is unblockable.
pub fn sigma_inducing_paths(
    g: &DirectedMixedGraph,
    s: &BTreeSet<usize>,
    a: usize,
    b: usize,
) -> Result<Vec<SigmaInducingPath>> {
    check_selection(g, s, a, b)?;
    let sccs = strongly_connected_components(g);
    let mut targets: Vec<usize> = s.iter().copied().collect();
    targets.extend([a, b]);
    let anc = ancestors_mask(g, &targets);
    Ok(enumerate_simple_paths(g, a, b)?
        .filter(|p| {
            (1..p.len()).all(|k| {
                let collider = p.mark_before(k).is_some_and(|m| m.is_arrowhead())
                    && p.mark_after(k).is_some_and(|m| m.is_arrowhead());
                if collider {
                    anc[p.node(k)]
                } else {
                    unblockable(&sccs, p, k)
                }
            })
        })
        .map(|p| SigmaInducingPath {
            into_start: p.is_into_start(),
            into_end: p.is_into_end(),
            path: p,
        })
        .collect())
}
