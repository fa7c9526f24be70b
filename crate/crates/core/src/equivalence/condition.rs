use std::collections::BTreeSet;

use super::discriminating::{discriminating_paths, is_discriminating, DiscriminatingPath};
use crate::abstraction::validate;
use crate::error::{Error, Result};
use crate::graph::{MarkedGraph, MixedGraph};

/// Triples `(a, b, c)` with `a < c`, `a` and `c` non-adjacent, and arrowheads at `b`
/// on both edges.
pub fn unshielded_colliders(h: &MixedGraph) -> BTreeSet<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for b in 0..h.node_count() {
        let heads: Vec<usize> = h
            .incident(b)
            .iter()
            .filter(|e| e.near.is_arrowhead())
            .map(|e| e.other)
            .collect();
        for (i, &a) in heads.iter().enumerate() {
            for &c in &heads[i + 1..] {
                if !h.is_adjacent(a, c) {
                    out.insert((a, b, c));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    Adjacency,
    UnshieldedCollider,
    DiscriminatingPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceWitness {
    /// A pair adjacent in exactly one graph.
    Pair(usize, usize),
    /// An unshielded collider of exactly one graph.
    Triple(usize, usize, usize),
    /// A path discriminating its target in both graphs, with the target a collider in
    /// one and a non-collider in the other.
    Discriminating(DiscriminatingPath),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub failed_clause: Option<Clause>,
    pub witness: Option<EquivalenceWitness>,
}

impl EquivalenceReport {
    fn pass() -> Self {
        EquivalenceReport {
            equivalent: true,
            failed_clause: None,
            witness: None,
        }
    }

    fn fail(clause: Clause, witness: EquivalenceWitness) -> Self {
        EquivalenceReport {
            equivalent: false,
            failed_clause: Some(clause),
            witness: Some(witness),
        }
    }

    /// The witness with node names from `h`.
    pub fn describe_witness(&self, h: &MixedGraph) -> Option<String> {
        let name = |v: usize| h.name(v).to_string();
        self.witness.as_ref().map(|w| match w {
            EquivalenceWitness::Pair(a, b) => format!("({}, {})", name(*a), name(*b)),
            EquivalenceWitness::Triple(a, b, c) => {
                format!("({}, {}, {})", name(*a), name(*b), name(*c))
            }
            EquivalenceWitness::Discriminating(p) => {
                let nodes: Vec<String> = p.nodes.iter().map(|&v| name(v)).collect();
                format!("({}) for {}", nodes.join(", "), name(p.target()))
            }
        })
    }
}

/// Paths discriminating their target in `from` and in `to` with different collider
/// status of the target.
fn discriminating_conflicts(from: &MixedGraph, to: &MixedGraph) -> Vec<DiscriminatingPath> {
    discriminating_paths(from, None)
        .into_iter()
        .filter(|p| {
            is_discriminating(to, &p.nodes, p.target())
                && p.target_is_collider(from) != p.target_is_collider(to)
        })
        .collect()
}

/// Decides m-Markov equivalence of two σ-MAGs over the same nodes: same adjacencies,
/// same unshielded colliders, and the same collider status of every target on paths
/// that discriminate it in both graphs (checked from each side).
///
/// The first failing clause is reported with its smallest witness.
pub fn condition1(h1: &MixedGraph, h2: &MixedGraph) -> Result<EquivalenceReport> {
    if h1.names() != h2.names() {
        return Err(Error::InvalidQuery(
            "graphs have different node sets".into(),
        ));
    }
    for h in [h1, h2] {
        let r = validate(h);
        if let Some(v) = r.violations.first() {
            return Err(Error::Precondition(format!(
                "not a σ-MAG: {} violation {}",
                v.kind,
                r.describe(&v.witness)
            )));
        }
    }

    let adj1 = h1.adjacencies();
    let adj2 = h2.adjacencies();
    if let Some(&(a, b)) = adj1.symmetric_difference(&adj2).min() {
        return Ok(EquivalenceReport::fail(
            Clause::Adjacency,
            EquivalenceWitness::Pair(a, b),
        ));
    }

    let uc1 = unshielded_colliders(h1);
    let uc2 = unshielded_colliders(h2);
    if let Some(&(a, b, c)) = uc1.symmetric_difference(&uc2).min() {
        return Ok(EquivalenceReport::fail(
            Clause::UnshieldedCollider,
            EquivalenceWitness::Triple(a, b, c),
        ));
    }

    let mut conflicts = discriminating_conflicts(h1, h2);
    conflicts.extend(discriminating_conflicts(h2, h1));
    if let Some(p) = conflicts.into_iter().min() {
        return Ok(EquivalenceReport::fail(
            Clause::DiscriminatingPath,
            EquivalenceWitness::Discriminating(p),
        ));
    }
    Ok(EquivalenceReport::pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed(edges: &[(&str, &str, &str)]) -> MixedGraph {
        MixedGraph::from_edges(&[], edges).unwrap()
    }

    fn h1() -> MixedGraph {
        mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("c", "--", "a"),
            ("a", "->", "d"),
        ])
    }

    fn h2() -> MixedGraph {
        mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("c", "--", "a"),
            ("d", "<->", "a"),
            ("d", "<->", "b"),
            ("d", "<->", "c"),
        ])
    }

    #[test]
    fn unshielded_collider_examples() {
        let h = mixed(&[("a", "->", "b"), ("c", "->", "b")]);
        assert_eq!(unshielded_colliders(&h), [(0, 1, 2)].into());
        let marginal_mag = mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("b", "->", "d"),
            ("a", "->", "d"),
        ]);
        assert!(unshielded_colliders(&marginal_mag).is_empty());
        assert!(unshielded_colliders(&h1()).is_empty());
    }

    #[test]
    fn reflexive() {
        for h in [h1(), h2()] {
            assert!(condition1(&h, &h).unwrap().equivalent);
        }
    }

    #[test]
    fn h1_and_h2_differ_in_adjacency() {
        let r = condition1(&h1(), &h2()).unwrap();
        assert!(!r.equivalent);
        assert_eq!(r.failed_clause, Some(Clause::Adjacency));
        assert_eq!(r.describe_witness(&h1()).unwrap(), "(b, d)");
    }

    #[test]
    fn directed_and_bidirected_edge_are_equivalent() {
        let r = condition1(&mixed(&[("a", "->", "b")]), &mixed(&[("a", "<->", "b")])).unwrap();
        assert!(r.equivalent);
    }

    #[test]
    fn collider_difference() {
        let r = condition1(
            &mixed(&[("a", "->", "b"), ("c", "->", "b")]),
            &mixed(&[("a", "->", "b"), ("b", "->", "c")]),
        )
        .unwrap();
        assert_eq!(r.failed_clause, Some(Clause::UnshieldedCollider));
        assert_eq!(r.witness, Some(EquivalenceWitness::Triple(0, 1, 2)));
    }

    #[test]
    fn discriminating_path_difference() {
        let with = |sym: &str| {
            mixed(&[
                ("a", "<->", "v"),
                ("v", "->", "c"),
                ("v", "<->", "b"),
                ("b", sym, "c"),
            ])
        };
        let r = condition1(&with("<->"), &with("->")).unwrap();
        assert_eq!(r.failed_clause, Some(Clause::DiscriminatingPath));
        assert_eq!(
            r.describe_witness(&with("->")).unwrap(),
            "(a, v, b, c) for b"
        );
    }

    #[test]
    fn errors() {
        let other = mixed(&[("a", "->", "x")]);
        assert!(matches!(
            condition1(&mixed(&[("a", "->", "b")]), &other),
            Err(Error::InvalidQuery(_))
        ));
        let cyclic = mixed(&[("a", "->", "b"), ("b", "->", "c"), ("c", "->", "a")]);
        assert!(condition1(&cyclic, &cyclic).unwrap_err().is_precondition());
    }
}
