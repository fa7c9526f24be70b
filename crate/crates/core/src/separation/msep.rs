use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{check_cap, check_z, SeparationQuery, SeparationVerdict};
use crate::error::Result;
use crate::graph::family::mixed_ancestors_mask;
use crate::graph::{enumerate_simple_paths, Mark, MarkedGraph, MixedGraph, Step, Walk};

/// Shape of the edge by which the search arrived at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arrival {
    Start,
    /// Arrowhead at the node.
    Into,
    /// The node is the tail of a directed edge.
    DirectedTail,
    Undirected,
}

const ARRIVALS: usize = 4;

fn arrival_of(near: Mark, far: Mark) -> Arrival {
    match (near, far) {
        (_, Mark::Arrowhead) => Arrival::Into,
        (Mark::Arrowhead, Mark::Tail) => Arrival::DirectedTail,
        (Mark::Tail, Mark::Tail) => Arrival::Undirected,
    }
}

pub(crate) struct MContext<'h> {
    h: &'h MixedGraph,
    z: Vec<bool>,
    anc_z: Vec<bool>,
}

impl<'h> MContext<'h> {
    pub(crate) fn new(h: &'h MixedGraph, z: &BTreeSet<usize>) -> Self {
        let mut mask = vec![false; h.node_count()];
        for &v in z {
            mask[v] = true;
        }
        let zs: Vec<usize> = z.iter().copied().collect();
        MContext {
            h,
            z: mask,
            anc_z: mixed_ancestors_mask(h, &zs),
        }
    }

    /// Checks the three rules position by position.
    pub(crate) fn walk_open(&self, walk: &Walk) -> bool {
        if self.z[walk.start()] || self.z[walk.end()] {
            return false;
        }
        (1..walk.len()).all(|k| {
            let v = walk.node(k);
            let before = walk.steps()[k - 1];
            let after = walk.steps()[k];
            let into_before = before.mark_to.is_arrowhead();
            let into_after = after.mark_from.is_arrowhead();
            let undirected_before = before.mark_from.is_tail() && before.mark_to.is_tail();
            let undirected_after = after.mark_from.is_tail() && after.mark_to.is_tail();
            if (into_before && undirected_after) || (undirected_before && into_after) {
                return false;
            }
            if into_before && into_after {
                self.anc_z[v]
            } else {
                !self.z[v]
            }
        })
    }

    fn allowed(&self, v: usize, arrival: Arrival, near: Mark, far: Mark) -> bool {
        let undirected = near.is_tail() && far.is_tail();
        match arrival {
            Arrival::Start => true,
            Arrival::Into if undirected => false,
            Arrival::Into if near.is_arrowhead() => self.anc_z[v],
            Arrival::Undirected if near.is_arrowhead() => false,
            _ => !self.z[v],
        }
    }

    /// Breadth-first search over (node, arrival shape). Rules (a)-(c) only look at the
    /// two walk edges meeting at a node, so the state captures everything a
    /// continuation depends on.
    fn search(&self, sources: &[usize], targets: &[bool]) -> Option<Walk> {
        let n = self.h.node_count();
        let mut prev: Vec<Option<(usize, Step)>> = vec![None; n * ARRIVALS];
        let mut seen = vec![false; n * ARRIVALS];
        let mut queue = VecDeque::new();
        for &x in sources {
            let s = x * ARRIVALS + Arrival::Start as usize;
            if !self.z[x] && !seen[s] {
                seen[s] = true;
                queue.push_back((x, Arrival::Start));
            }
        }
        while let Some((v, arrival)) = queue.pop_front() {
            let here = v * ARRIVALS + arrival as usize;
            for e in self.h.incident(v) {
                if !self.allowed(v, arrival, e.near, e.far) {
                    continue;
                }
                let next = arrival_of(e.near, e.far);
                let state = e.other * ARRIVALS + next as usize;
                if seen[state] {
                    continue;
                }
                seen[state] = true;
                prev[state] = Some((
                    here,
                    Step {
                        to: e.other,
                        mark_from: e.near,
                        mark_to: e.far,
                    },
                ));
                if targets[e.other] && !self.z[e.other] {
                    let mut steps = Vec::new();
                    let mut s = state;
                    while let Some((p, step)) = prev[s] {
                        steps.push(step);
                        s = p;
                    }
                    steps.reverse();
                    return Some(Walk::new(s / ARRIVALS, steps));
                }
                queue.push_back((e.other, next));
            }
        }
        None
    }

    /// Shortens an open walk to an open path. Cutting out the loop between two visits
    /// of a node is tried first; enumeration is the fallback. On graphs that are not
    /// σ-MAGs an open walk need not imply an open path, and the walk is kept.
    fn to_path(&self, walk: Walk) -> Walk {
        let mut walk = walk;
        'outer: while !walk.is_path() {
            let nodes = walk.nodes();
            for i in 0..nodes.len() {
                for j in (i + 1..nodes.len()).rev() {
                    if nodes[i] == nodes[j] {
                        let cut = walk.slice(0, i).concat(&walk.slice(j, walk.len()));
                        if self.walk_open(&cut) {
                            walk = cut;
                            continue 'outer;
                        }
                    }
                }
            }
            let (a, b) = (walk.start(), walk.end());
            if a != b {
                if let Some(p) = enumerate_simple_paths(self.h, a, b)
                    .expect("distinct endpoints")
                    .find(|p| self.walk_open(p))
                {
                    return p;
                }
            }
            return walk;
        }
        walk
    }
}

/// True iff `walk` is m-open given `z`: no non-collider (endpoints included) in `z`,
/// every collider an ancestor of `z` along directed edges, and no arrowhead meeting an
/// undirected edge at a node.
pub fn m_open_walk(h: &MixedGraph, walk: &Walk, z: &BTreeSet<usize>) -> Result<bool> {
    walk.check(h)?;
    check_z(h, z)?;
    Ok(MContext::new(h, z).walk_open(walk))
}

/// Reachability engine for m-separation.
pub fn m_separated(h: &MixedGraph, q: &SeparationQuery) -> Result<SeparationVerdict> {
    q.check(h)?;
    if let Some(v) = q.trivially_connected() {
        return Ok(SeparationVerdict::connected(Walk::trivial(v)));
    }
    let ctx = MContext::new(h, &q.z);
    let sources: Vec<usize> = q.x.iter().copied().collect();
    let mut targets = vec![false; h.node_count()];
    for &y in &q.y {
        targets[y] = true;
    }
    Ok(match ctx.search(&sources, &targets) {
        None => SeparationVerdict::separated(),
        Some(walk) => SeparationVerdict::connected(ctx.to_path(walk)),
    })
}

/// Enumeration oracle for m-separation with per-pair path caching.
pub struct MPathOracle<'h> {
    h: &'h MixedGraph,
    paths: HashMap<(usize, usize), Vec<Walk>>,
}

impl<'h> MPathOracle<'h> {
    pub fn new(h: &'h MixedGraph, cap: usize) -> Result<Self> {
        check_cap(h, cap)?;
        Ok(MPathOracle {
            h,
            paths: HashMap::new(),
        })
    }

    pub fn query(&mut self, q: &SeparationQuery) -> Result<SeparationVerdict> {
        q.check(self.h)?;
        if let Some(v) = q.trivially_connected() {
            return Ok(SeparationVerdict::connected(Walk::trivial(v)));
        }
        let ctx = MContext::new(self.h, &q.z);
        for &x in &q.x {
            for &y in &q.y {
                if x == y {
                    continue;
                }
                let h = self.h;
                let paths = self.paths.entry((x, y)).or_insert_with(|| {
                    enumerate_simple_paths(h, x, y)
                        .expect("distinct endpoints in range")
                        .collect()
                });
                if let Some(p) = paths.iter().find(|p| ctx.walk_open(p)) {
                    return Ok(SeparationVerdict::connected(p.clone()));
                }
            }
        }
        Ok(SeparationVerdict::separated())
    }
}

/// Enumeration oracle for m-separation over simple paths; fails above `cap` nodes.
pub fn m_separated_oracle(
    h: &MixedGraph,
    q: &SeparationQuery,
    cap: usize,
) -> Result<SeparationVerdict> {
    MPathOracle::new(h, cap)?.query(q)
}
