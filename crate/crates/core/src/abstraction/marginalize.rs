use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{DirectedMixedGraph, MarkedGraph};

/// Nodes outside `w` reachable from `from` by a directed path of length at least one
/// whose interior lies in `w`.
fn exits(g: &DirectedMixedGraph, w: &[bool], from: usize) -> Vec<usize> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = BTreeSet::new();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &c in g.children(v) {
            if !w[c] {
                out.insert(c);
            } else if !seen[c] {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    out.into_iter().collect()
}

/// Latent projection of `g` onto the nodes outside `w`.
///
/// `a -> b` survives iff a directed walk from `a` to `b` runs through `w` only, and
/// `a <-> b` iff a bifurcation joins them through `w`: two directed walks through `w`
/// leaving a common node of `w`, or leaving the two ends of a bidirected edge whose
/// endpoints are `a`, `b` or in `w`.
pub fn marginalize(g: &DirectedMixedGraph, w: &BTreeSet<usize>) -> Result<DirectedMixedGraph> {
    let n = g.node_count();
    if let Some(&v) = w.iter().find(|&&v| v >= n) {
        return Err(Error::UnknownNode(format!("#{v}")));
    }
    let mut latent = vec![false; n];
    for &v in w {
        latent[v] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| !latent[v]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        new_index[v] = i;
    }

    // reach[v]: observed endpoints of directed walks from v through latent nodes,
    // with v itself included when v is observed
    let reach: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if latent[v] {
                exits(g, &latent, v)
            } else {
                vec![v]
            }
        })
        .collect();

    let mut directed = BTreeSet::new();
    for &a in &kept {
        for b in exits(g, &latent, a) {
            if a != b {
                directed.insert((new_index[a], new_index[b]));
            }
        }
    }

    let mut bidirected = BTreeSet::new();
    let mut join = |xs: &[usize], ys: &[usize]| {
        for &x in xs {
            for &y in ys {
                if x != y {
                    let (i, j) = (new_index[x], new_index[y]);
                    bidirected.insert((i.min(j), i.max(j)));
                }
            }
        }
    };
    for &u in w {
        let below = exits(g, &latent, u);
        join(&below, &below);
    }
    for &(u, v) in g.bidirected_edges() {
        join(&reach[u], &reach[v]);
    }

    let names = kept.iter().map(|&v| g.names()[v].clone()).collect();
    Ok(DirectedMixedGraph::from_indexed(
        names, directed, bidirected,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drop(g: &DirectedMixedGraph, names: &[&str]) -> DirectedMixedGraph {
        let w = g.indices_of(names).unwrap().into_iter().collect();
        marginalize(g, &w).unwrap()
    }

    #[test]
    fn latent_projects_to_marginal() {
        let dg = DirectedMixedGraph::from_edges(
            &[],
            &[
                ("a", "b"),
                ("b", "a"),
                ("b", "s"),
                ("c", "s"),
                ("u", "d"),
                ("u", "b"),
            ],
            &[],
        )
        .unwrap();
        let expected = DirectedMixedGraph::from_edges(
            &[],
            &[("a", "b"), ("b", "a"), ("b", "s"), ("c", "s")],
            &[("b", "d")],
        )
        .unwrap();
        assert_eq!(drop(&dg, &["u"]), expected);
    }

    #[test]
    fn empty_set_is_identity() {
        let g = DirectedMixedGraph::from_edges(&["z"], &[("a", "b"), ("b", "a")], &[("a", "c")])
            .unwrap();
        assert_eq!(drop(&g, &[]), g);
    }

    #[test]
    fn common_latent_parent_becomes_bidirected() {
        let g = DirectedMixedGraph::from_edges(&[], &[("w", "a"), ("w", "b")], &[]).unwrap();
        let expected = DirectedMixedGraph::from_edges(&[], &[], &[("a", "b")]).unwrap();
        assert_eq!(drop(&g, &["w"]), expected);
    }

    #[test]
    fn chains_and_bidirected_tops() {
        // a <- w1 <-> w2 -> w3 -> b, and x -> w1 -> ... gives x -> a
        let g = DirectedMixedGraph::from_edges(
            &[],
            &[("w1", "a"), ("w2", "w3"), ("w3", "b"), ("x", "w1")],
            &[("w1", "w2")],
        )
        .unwrap();
        let expected = DirectedMixedGraph::from_edges(&[], &[("x", "a")], &[("a", "b")]).unwrap();
        assert_eq!(drop(&g, &["w1", "w2", "w3"]), expected);
    }

    #[test]
    fn latent_cycle_does_not_create_self_loops() {
        let g = DirectedMixedGraph::from_edges(&[], &[("a", "w"), ("w", "a")], &[]).unwrap();
        let m = drop(&g, &["w"]);
        assert_eq!(m.edge_count(), 0);
        assert_eq!(m.node_count(), 1);
    }
}
