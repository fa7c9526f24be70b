use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{check_cap, check_z, SeparationQuery, SeparationVerdict};
use crate::error::{Error, Result};
use crate::graph::family::{ancestors_mask, shortest_directed_path, strongly_connected_components};
use crate::graph::{
    enumerate_simple_paths, DirectedMixedGraph, Mark, MarkedGraph, Sccs, Step, Walk,
};

/// How the search arrived at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arrival {
    /// The node is the start of the walk.
    Start,
    /// Arrowhead at the node.
    Into,
    /// Tail at the node; the previous node lies in the same strongly connected component.
    OutSame,
    /// Tail at the node; the previous node lies in another component.
    OutOther,
}

const ARRIVALS: usize = 4;

impl Arrival {
    fn index(self) -> usize {
        self as usize
    }
}

/// Precomputed data for σ-blocking decisions under one conditioning set.
pub(crate) struct SigmaContext<'g> {
    g: &'g DirectedMixedGraph,
    sccs: Sccs,
    z: Vec<bool>,
    anc_z: Vec<bool>,
}

impl<'g> SigmaContext<'g> {
    pub(crate) fn new(g: &'g DirectedMixedGraph, sccs: Sccs, z: &BTreeSet<usize>) -> Self {
        let n = g.node_count();
        let mut mask = vec![false; n];
        for &v in z {
            mask[v] = true;
        }
        let zs: Vec<usize> = z.iter().copied().collect();
        SigmaContext {
            g,
            sccs,
            z: mask,
            anc_z: ancestors_mask(g, &zs),
        }
    }

    /// Node version: colliders in Anc(Z), blockable non-colliders outside Z.
    pub(crate) fn walk_open(&self, walk: &Walk) -> bool {
        let n = walk.len();
        if self.z[walk.start()] || self.z[walk.end()] {
            return false;
        }
        for k in 1..n {
            let v = walk.node(k);
            let before = walk.mark_before(k).expect("interior position");
            let after = walk.mark_after(k).expect("interior position");
            if before.is_arrowhead() && after.is_arrowhead() {
                if !self.anc_z[v] {
                    return false;
                }
                continue;
            }
            if self.z[v] && !unblockable(&self.sccs, walk, k) {
                return false;
            }
        }
        true
    }

    /// Segment version, defined on paths.
    pub(crate) fn path_open_segments(&self, path: &Walk) -> bool {
        if self.z[path.start()] || self.z[path.end()] {
            return false;
        }
        let parts = path.segments(&self.sccs).segments;
        for seg in &parts {
            let (l, r) = (seg.first, seg.last);
            let entered_into_left = l > 0 && path.mark_before(l) == Some(Mark::Arrowhead);
            let entered_into_right = r < path.len() && path.mark_after(r) == Some(Mark::Arrowhead);
            if l > 0 && path.mark_before(l) == Some(Mark::Tail) && self.z[path.node(l)] {
                return false;
            }
            if r < path.len() && path.mark_after(r) == Some(Mark::Tail) && self.z[path.node(r)] {
                return false;
            }
            if entered_into_left && entered_into_right && !self.anc_z[path.node(l)] {
                return false;
            }
        }
        true
    }

    fn allowed(&self, v: usize, arrival: Arrival, near: Mark, w: usize) -> bool {
        match arrival {
            Arrival::Start => true,
            Arrival::Into if near.is_arrowhead() => self.anc_z[v],
            _ => {
                let blockable =
                    arrival == Arrival::OutOther || (near.is_tail() && !self.sccs.same(v, w));
                !(blockable && self.z[v])
            }
        }
    }

    fn arrival_at(&self, v: usize, w: usize, far: Mark) -> Arrival {
        if far.is_arrowhead() {
            Arrival::Into
        } else if self.sccs.same(v, w) {
            Arrival::OutSame
        } else {
            Arrival::OutOther
        }
    }

    /// Breadth-first search for a σ-open walk from `sources` to `targets`.
    ///
    /// Soundness rests on every blocking rule being local: whether `v` may be
    /// crossed depends only on the marks of the two walk edges at `v`, the component
    /// of the neighbor on a tail edge, and the precomputed `Z` and `Anc(Z)`. The
    /// arrival shape records exactly what the first edge contributes, so any two
    /// walks reaching the same state have the same continuations.
    fn search(&self, sources: &[usize], targets: &[bool]) -> Option<Walk> {
        let n = self.g.node_count();
        let mut prev: Vec<Option<(usize, Step)>> = vec![None; n * ARRIVALS];
        let mut seen = vec![false; n * ARRIVALS];
        let mut queue = VecDeque::new();
        for &x in sources {
            let s = x * ARRIVALS + Arrival::Start.index();
            if !self.z[x] && !seen[s] {
                seen[s] = true;
                queue.push_back((x, Arrival::Start));
            }
        }
        while let Some((v, arrival)) = queue.pop_front() {
            let here = v * ARRIVALS + arrival.index();
            for e in self.g.incident(v) {
                if !self.allowed(v, arrival, e.near, e.other) {
                    continue;
                }
                let next = self.arrival_at(v, e.other, e.far);
                let state = e.other * ARRIVALS + next.index();
                if seen[state] {
                    continue;
                }
                seen[state] = true;
                let step = Step {
                    to: e.other,
                    mark_from: e.near,
                    mark_to: e.far,
                };
                prev[state] = Some((here, step));
                if targets[e.other] && !self.z[e.other] {
                    return Some(rebuild(&prev, state));
                }
                queue.push_back((e.other, next));
            }
        }
        None
    }
}

/// An interior non-collider is unblockable iff every walk edge with its tail at the
/// node leads to a node of the same strongly connected component.
pub(crate) fn unblockable(sccs: &Sccs, walk: &Walk, k: usize) -> bool {
    let v = walk.node(k);
    let stays = |w: usize, mark: Option<Mark>| mark != Some(Mark::Tail) || sccs.same(v, w);
    k > 0
        && k < walk.len()
        && stays(walk.node(k - 1), walk.mark_before(k))
        && stays(walk.node(k + 1), walk.mark_after(k))
}

fn rebuild(prev: &[Option<(usize, Step)>], mut state: usize) -> Walk {
    let mut steps = Vec::new();
    while let Some((p, step)) = prev[state] {
        steps.push(step);
        state = p;
    }
    steps.reverse();
    Walk::new(state / ARRIVALS, steps)
}

fn directed_walk(nodes: &[usize], reverse: bool) -> Walk {
    let (mark_from, mark_to) = if reverse {
        (Mark::Arrowhead, Mark::Tail)
    } else {
        (Mark::Tail, Mark::Arrowhead)
    };
    Walk::new(
        nodes[0],
        nodes[1..]
            .iter()
            .map(|&to| Step {
                to,
                mark_from,
                mark_to,
            })
            .collect(),
    )
}

/// Turns a σ-open walk into a σ-open path with the same endpoints.
///
/// While some node repeats, let `C` be its strongly connected component and `i`, `j`
/// the first and last positions in `C`. If the walk ends at `j` or leaves `v_j` along a
/// directed edge, `v_i..v_j` becomes a shortest directed path `v_i -> .. -> v_j`;
/// otherwise it becomes a shortest directed path `v_j -> .. -> v_i` read backwards.
/// The replacement stays inside `C`, so every new interior node is unblockable and the
/// nodes at `i` and `j` keep a status that the original walk already certified.
pub fn walk_to_open_path(g: &DirectedMixedGraph, sccs: &Sccs, walk: &Walk) -> Walk {
    let mut walk = walk.clone();
    loop {
        let nodes = walk.nodes();
        let mut seen = vec![false; g.node_count()];
        let Some(&w) = nodes
            .iter()
            .find(|&&v| std::mem::replace(&mut seen[v], true))
        else {
            return walk;
        };
        let c = sccs.component_of(w);
        let i = nodes
            .iter()
            .position(|&v| sccs.component_of(v) == c)
            .expect("w is on the walk");
        let j = nodes
            .iter()
            .rposition(|&v| sccs.component_of(v) == c)
            .expect("w is on the walk");
        let n = walk.len();
        let middle = if j == n || walk.mark_after(j) == Some(Mark::Tail) {
            let p = shortest_directed_path(g, nodes[i], nodes[j]).expect("same component");
            directed_walk(&p, false)
        } else {
            let mut p = shortest_directed_path(g, nodes[j], nodes[i]).expect("same component");
            p.reverse();
            directed_walk(&p, true)
        };
        walk = walk.slice(0, i).concat(&middle).concat(&walk.slice(j, n));
    }
}

/// True iff `walk` is σ-open given `z`: every collider is an ancestor of `z` and no
/// blockable non-collider is in `z`. Endpoints are always blockable.
pub fn sigma_open_walk(g: &DirectedMixedGraph, walk: &Walk, z: &BTreeSet<usize>) -> Result<bool> {
    walk.check(g)?;
    check_z(g, z)?;
    let ctx = SigmaContext::new(g, strongly_connected_components(g), z);
    Ok(ctx.walk_open(walk))
}

/// Segment formulation on a path: the path is split into maximal runs inside one
/// strongly connected component and blocked if an endpoint is in `z`, if a run is left
/// along a directed edge from a boundary node in `z`, or if a run entered by arrowheads
/// on both sides has no member in Anc(z).
pub fn sigma_open_path_segments(
    g: &DirectedMixedGraph,
    path: &Walk,
    z: &BTreeSet<usize>,
) -> Result<bool> {
    path.check(g)?;
    check_z(g, z)?;
    if !path.is_path() {
        return Err(Error::InvalidWalk(
            "segment blocking is defined on paths".into(),
        ));
    }
    let ctx = SigmaContext::new(g, strongly_connected_components(g), z);
    Ok(ctx.path_open_segments(path))
}

/// Reachability engine for σ-separation. A connected verdict carries a σ-open path.
pub fn sigma_separated(g: &DirectedMixedGraph, q: &SeparationQuery) -> Result<SeparationVerdict> {
    q.check(g)?;
    if let Some(v) = q.trivially_connected() {
        return Ok(SeparationVerdict::connected(Walk::trivial(v)));
    }
    let sccs = strongly_connected_components(g);
    let ctx = SigmaContext::new(g, sccs, &q.z);
    let sources: Vec<usize> = q.x.iter().copied().collect();
    let mut targets = vec![false; g.node_count()];
    for &y in &q.y {
        targets[y] = true;
    }
    Ok(match ctx.search(&sources, &targets) {
        None => SeparationVerdict::separated(),
        Some(walk) => {
            let path = walk_to_open_path(g, &ctx.sccs, &walk);
            debug_assert!(path.is_path() && ctx.walk_open(&path));
            SeparationVerdict::connected(path)
        }
    })
}

/// Enumeration oracle for σ-separation, caching the simple paths of every endpoint
/// pair so that many conditioning sets can be checked against one graph.
pub struct SigmaPathOracle<'g> {
    g: &'g DirectedMixedGraph,
    sccs: Sccs,
    paths: HashMap<(usize, usize), Vec<Walk>>,
}

impl<'g> SigmaPathOracle<'g> {
    /// Fails when `g` has more than `cap` nodes.
    pub fn new(g: &'g DirectedMixedGraph, cap: usize) -> Result<Self> {
        check_cap(g, cap)?;
        Ok(SigmaPathOracle {
            g,
            sccs: strongly_connected_components(g),
            paths: HashMap::new(),
        })
    }

    /// Decides `q` by testing every simple path between members of `X` and `Y`
    /// against the segment criterion.
    pub fn query(&mut self, q: &SeparationQuery) -> Result<SeparationVerdict> {
        q.check(self.g)?;
        if let Some(v) = q.trivially_connected() {
            return Ok(SeparationVerdict::connected(Walk::trivial(v)));
        }
        let ctx = SigmaContext::new(self.g, self.sccs.clone(), &q.z);
        for &x in &q.x {
            for &y in &q.y {
                if x == y {
                    continue;
                }
                let g = self.g;
                let paths = self.paths.entry((x, y)).or_insert_with(|| {
                    enumerate_simple_paths(g, x, y)
                        .expect("distinct endpoints in range")
                        .collect()
                });
                if let Some(p) = paths.iter().find(|p| ctx.path_open_segments(p)) {
                    return Ok(SeparationVerdict::connected(p.clone()));
                }
            }
        }
        Ok(SeparationVerdict::separated())
    }
}

/// Enumeration oracle for σ-separation; fails above `cap` nodes.
pub fn sigma_separated_oracle(
    g: &DirectedMixedGraph,
    q: &SeparationQuery,
    cap: usize,
) -> Result<SeparationVerdict> {
    SigmaPathOracle::new(g, cap)?.query(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::DEFAULT_SEPARATION_ORACLE_CAP as CAP;

    fn marginal() -> DirectedMixedGraph {
        DirectedMixedGraph::from_edges(
            &[],
            &[("a", "b"), ("b", "a"), ("b", "s"), ("c", "s")],
            &[("b", "d")],
        )
        .unwrap()
    }

    fn set(g: &DirectedMixedGraph, names: &[&str]) -> BTreeSet<usize> {
        g.indices_of(names).unwrap().into_iter().collect()
    }

    fn query(g: &DirectedMixedGraph, x: &str, y: &str, z: &[&str]) -> SeparationQuery {
        SeparationQuery::from_names(g, &[x], &[y], z).unwrap()
    }

    #[test]
    fn walk_examples_on_marginal() {
        let g = marginal();
        let w = Walk::parse(&g, "a -> b <-> d").unwrap();
        assert!(sigma_open_walk(&g, &w, &set(&g, &["s"])).unwrap());
        let w = Walk::parse(&g, "c -> s <- b <-> d").unwrap();
        assert!(!sigma_open_walk(&g, &w, &set(&g, &["b", "s"])).unwrap());
        assert!(sigma_open_walk(&g, &w, &set(&g, &["s"])).unwrap());
    }

    #[test]
    fn trivial_walk_follows_endpoint_rule() {
        let g = marginal();
        let w = Walk::trivial(0);
        assert!(!sigma_open_walk(&g, &w, &set(&g, &["a"])).unwrap());
        assert!(sigma_open_walk(&g, &w, &BTreeSet::new()).unwrap());
    }

    #[test]
    fn unblockable_non_collider_inside_a_cycle() {
        // b is a non-collider whose only outgoing walk edge stays in {a, b}
        let g = DirectedMixedGraph::from_edges(
            &[],
            &[("a", "b"), ("b", "a"), ("b", "c")],
            &[("x", "a")],
        )
        .unwrap();
        let w = Walk::parse(&g, "x <-> a <- b -> c").unwrap();
        // b leaves its component towards c, so it is blockable
        assert!(!sigma_open_walk(&g, &w, &set(&g, &["b"])).unwrap());
        // a only points back to b, inside its component
        assert!(sigma_open_walk(&g, &w, &set(&g, &["a"])).unwrap());
    }

    #[test]
    fn segment_examples() {
        let g = marginal();
        let p = Walk::parse(&g, "a -> b <-> d").unwrap();
        assert!(sigma_open_path_segments(&g, &p, &set(&g, &["s"])).unwrap());
        assert!(!sigma_open_path_segments(&g, &p, &set(&g, &["a"])).unwrap());
        let walk = Walk::parse(&g, "a -> b -> a").unwrap();
        assert!(sigma_open_path_segments(&g, &walk, &BTreeSet::new()).is_err());
    }

    #[test]
    fn node_open_implies_segment_open_but_not_conversely() {
        // c -> a <- b -> d with a and b in one component: the node version sees the
        // collider a outside Anc(Z); the segment {a, b} is not entered twice by arrowheads.
        let g = DirectedMixedGraph::from_edges(
            &[],
            &[("c", "a"), ("b", "a"), ("a", "b"), ("b", "d")],
            &[],
        )
        .unwrap();
        let p = Walk::parse(&g, "c -> a <- b -> d").unwrap();
        let z = BTreeSet::new();
        assert!(!sigma_open_walk(&g, &p, &z).unwrap());
        assert!(sigma_open_path_segments(&g, &p, &z).unwrap());
        // the verdicts still agree: c -> a -> b -> d is open in both senses
        let q = query(&g, "c", "d", &[]);
        assert!(!sigma_separated(&g, &q).unwrap().separated);
        assert!(!sigma_separated_oracle(&g, &q, CAP).unwrap().separated);
    }

    #[test]
    fn separation_examples_on_marginal() {
        let g = marginal();
        let v = sigma_separated(&g, &query(&g, "c", "d", &["s"])).unwrap();
        assert!(!v.separated);
        assert_eq!(v.witness.unwrap().display(&g), "c -> s <- b <-> d");
        assert!(
            sigma_separated(&g, &query(&g, "c", "d", &["b", "s"]))
                .unwrap()
                .separated
        );
        let v = sigma_separated(&g, &query(&g, "c", "c", &[])).unwrap();
        assert_eq!(v.witness, Some(Walk::trivial(g.index_of("c").unwrap())));
    }

    #[test]
    fn oracle_matches_engine_on_examples() {
        let g = marginal();
        for (x, y, z) in [
            ("c", "d", vec!["s"]),
            ("c", "d", vec!["b", "s"]),
            ("c", "c", vec![]),
            ("a", "d", vec!["s"]),
        ] {
            let q = query(&g, x, y, &z);
            let engine = sigma_separated(&g, &q).unwrap();
            let oracle = sigma_separated_oracle(&g, &q, CAP).unwrap();
            assert_eq!(engine.separated, oracle.separated, "{x} {y} {z:?}");
        }
        let g = DirectedMixedGraph::from_edges(&["x", "y"], &[], &[]).unwrap();
        let q = query(&g, "x", "y", &[]);
        assert!(sigma_separated_oracle(&g, &q, CAP).unwrap().separated);
    }

    #[test]
    fn oracle_respects_cap() {
        let g = marginal();
        let q = query(&g, "c", "d", &[]);
        assert!(matches!(
            sigma_separated_oracle(&g, &q, 3),
            Err(Error::OracleCap { nodes: 5, cap: 3 })
        ));
    }

    #[test]
    fn shortcut_replaces_cycle_detour() {
        // x -> a -> b -> c -> a <-> y revisits a; the path must stay open
        let g = DirectedMixedGraph::from_edges(
            &[],
            &[("x", "a"), ("a", "b"), ("b", "c"), ("c", "a")],
            &[("a", "y")],
        )
        .unwrap();
        let sccs = strongly_connected_components(&g);
        let walk = Walk::parse(&g, "x -> a -> b -> c -> a <-> y").unwrap();
        let z = set(&g, &["a"]);
        assert!(sigma_open_walk(&g, &walk, &z).unwrap());
        let path = walk_to_open_path(&g, &sccs, &walk);
        assert!(path.is_path());
        assert_eq!(path.display(&g), "x -> a <-> y");
        assert!(sigma_open_walk(&g, &path, &z).unwrap());
    }

    #[test]
    fn query_errors() {
        let g = marginal();
        let q = SeparationQuery::new([], [0], []);
        assert!(matches!(
            sigma_separated(&g, &q),
            Err(Error::InvalidQuery(_))
        ));
        let q = SeparationQuery::new([0], [99], []);
        assert!(matches!(
            sigma_separated(&g, &q),
            Err(Error::UnknownNode(_))
        ));
    }
}
