use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::family::ancestors_mask;
use crate::graph::{ContextedDmg, Mark, MixedGraph};
use crate::separation::sigma_inducing_exists;

/// The σ-MAG over the observed nodes that represents `c`.
///
/// Observed `a` and `b` are adjacent iff a σ-inducing path given `S` joins them in the
/// DMG. The mark at `a` is a tail iff `a` is an ancestor of `{b} ∪ S`.
pub fn represent(c: &ContextedDmg) -> Result<MixedGraph> {
    let g = &c.graph;
    let observed = c.observed();
    let sel: Vec<usize> = c.selection().iter().copied().collect();
    // anc[i][v]: v is an ancestor of {observed[i]} ∪ S
    let anc: Vec<Vec<bool>> = observed
        .iter()
        .map(|&b| {
            let mut targets = sel.clone();
            targets.push(b);
            ancestors_mask(g, &targets)
        })
        .collect();
    let mark = |at: usize, toward: usize| {
        if anc[toward][observed[at]] {
            Mark::Tail
        } else {
            Mark::Arrowhead
        }
    };

    let mut edges = BTreeMap::new();
    for i in 0..observed.len() {
        for j in i + 1..observed.len() {
            if sigma_inducing_exists(g, c.selection(), observed[i], observed[j])? {
                edges.insert((i, j), (mark(i, j), mark(j, i)));
            }
        }
    }
    Ok(MixedGraph::from_indexed(c.observed_names(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedMixedGraph;

    fn mixed(edges: &[(&str, &str, &str)]) -> MixedGraph {
        MixedGraph::from_edges(&[], edges).unwrap()
    }

    fn ctx(directed: &[(&str, &str)], bidirected: &[(&str, &str)], s: &[&str]) -> ContextedDmg {
        let g = DirectedMixedGraph::from_edges(&[], directed, bidirected).unwrap();
        ContextedDmg::with_selection_names(g, s).unwrap()
    }

    fn h1() -> MixedGraph {
        mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("c", "--", "a"),
            ("a", "->", "d"),
        ])
    }

    #[test]
    fn marginal_gives_its_mag() {
        let c = ctx(
            &[("a", "b"), ("b", "a"), ("b", "s"), ("c", "s")],
            &[("b", "d")],
            &["s"],
        );
        let expected = mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("b", "->", "d"),
            ("a", "->", "d"),
        ]);
        assert_eq!(represent(&c).unwrap(), expected);
    }

    #[test]
    fn first_equivalence_pair() {
        let g1 = ctx(&[("a", "d"), ("a", "c"), ("b", "a"), ("c", "b")], &[], &[]);
        assert_eq!(represent(&g1).unwrap(), h1());
        let g2 = ctx(
            &[("a", "c"), ("a", "b"), ("c", "s_bc"), ("b", "s_bc")],
            &[("d", "a")],
            &["s_bc"],
        );
        // d <-> a in G2 yet a -> d in H1: a is an ancestor of S
        assert_eq!(represent(&g2).unwrap(), h1());
    }

    #[test]
    fn selection_pair_from_g5() {
        let g5 = ctx(
            &[
                ("a", "d"),
                ("a", "s_ab"),
                ("b", "s_ab"),
                ("a", "s_ac"),
                ("c", "s_ac"),
            ],
            &[],
            &["s_ab", "s_ac"],
        );
        assert_eq!(
            represent(&g5).unwrap(),
            mixed(&[("a", "--", "b"), ("c", "--", "a"), ("a", "->", "d")])
        );
    }

    #[test]
    fn single_edge() {
        let c = ctx(&[("a", "b")], &[], &[]);
        assert_eq!(represent(&c).unwrap(), mixed(&[("a", "->", "b")]));
    }
}
