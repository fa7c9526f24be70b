//! Brute-force reference implementations, written straight from the definitions and
//! sharing no code with the library beyond graph accessors, plus seeded samplers.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use cyclomag::abstraction::represent;
use cyclomag::io::{random_dmg, GeneratorConfig};
use cyclomag::{ContextedDmg, DirectedMixedGraph, Mark, MarkedGraph, MixedGraph};

/// A simple path as nodes plus `(mark at left end, mark at right end)` per edge.
#[derive(Debug, Clone)]
pub struct RawPath {
    pub nodes: Vec<usize>,
    pub marks: Vec<(Mark, Mark)>,
}

impl RawPath {
    pub fn arrow_before(&self, k: usize) -> bool {
        k > 0 && self.marks[k - 1].1 == Mark::Arrowhead
    }

    pub fn arrow_after(&self, k: usize) -> bool {
        k + 1 < self.nodes.len() && self.marks[k].0 == Mark::Arrowhead
    }

    pub fn is_collider(&self, k: usize) -> bool {
        self.arrow_before(k) && self.arrow_after(k)
    }
}

/// Every simple path from `a` to `b`, parallel edges giving distinct paths.
pub fn all_paths<G: MarkedGraph>(g: &G, a: usize, b: usize) -> Vec<RawPath> {
    fn go<G: MarkedGraph>(
        g: &G,
        b: usize,
        cur: &mut RawPath,
        on: &mut Vec<bool>,
        out: &mut Vec<RawPath>,
    ) {
        let v = *cur.nodes.last().unwrap();
        if v == b {
            out.push(cur.clone());
            return;
        }
        for e in g.incident(v) {
            if on[e.other] {
                continue;
            }
            on[e.other] = true;
            cur.nodes.push(e.other);
            cur.marks.push((e.near, e.far));
            go(g, b, cur, on, out);
            cur.nodes.pop();
            cur.marks.pop();
            on[e.other] = false;
        }
    }
    let mut on = vec![false; g.node_count()];
    on[a] = true;
    let mut cur = RawPath {
        nodes: vec![a],
        marks: vec![],
    };
    let mut out = Vec::new();
    go(g, b, &mut cur, &mut on, &mut out);
    out
}

/// `reach[u][v]`: a directed path from `u` to `v` exists (reflexive).
pub fn reach_matrix<G: MarkedGraph>(g: &G) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut r = vec![vec![false; n]; n];
    for (u, row) in r.iter_mut().enumerate() {
        row[u] = true;
        for e in g.incident(u) {
            if e.near == Mark::Tail && e.far == Mark::Arrowhead {
                row[e.other] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn in_anc(reach: &[Vec<bool>], v: usize, z: &BTreeSet<usize>) -> bool {
    z.iter().any(|&t| reach[v][t])
}

/// Node-version σ-openness of a path given `z`. Endpoints are non-colliders and always
/// blockable; an interior non-collider is blockable when it has an on-path tail towards
/// a neighbour outside its strongly connected component.
pub fn sigma_path_open(reach: &[Vec<bool>], p: &RawPath, z: &BTreeSet<usize>) -> bool {
    let last = p.nodes.len() - 1;
    let same_sc = |u: usize, v: usize| reach[u][v] && reach[v][u];
    for (k, &v) in p.nodes.iter().enumerate() {
        if k != 0 && k != last && p.is_collider(k) {
            if !in_anc(reach, v, z) {
                return false;
            }
            continue;
        }
        if !z.contains(&v) {
            continue;
        }
        let blockable = k == 0
            || k == last
            || (p.marks[k - 1].1 == Mark::Tail && !same_sc(v, p.nodes[k - 1]))
            || (p.marks[k].0 == Mark::Tail && !same_sc(v, p.nodes[k + 1]));
        if blockable {
            return false;
        }
    }
    true
}

pub fn brute_sigma_separated(
    g: &DirectedMixedGraph,
    reach: &[Vec<bool>],
    a: usize,
    b: usize,
    z: &BTreeSet<usize>,
) -> bool {
    !all_paths(g, a, b)
        .iter()
        .any(|p| sigma_path_open(reach, p, z))
}

/// m-openness of a path given `z`.
pub fn m_path_open(reach: &[Vec<bool>], p: &RawPath, z: &BTreeSet<usize>) -> bool {
    let last = p.nodes.len() - 1;
    for (k, &v) in p.nodes.iter().enumerate() {
        let interior = k != 0 && k != last;
        if interior && p.is_collider(k) {
            if !in_anc(reach, v, z) {
                return false;
            }
        } else if z.contains(&v) {
            return false;
        }
        if interior {
            let undirected_before = p.marks[k - 1] == (Mark::Tail, Mark::Tail);
            let undirected_after = p.marks[k] == (Mark::Tail, Mark::Tail);
            if (p.arrow_before(k) && undirected_after) || (undirected_before && p.arrow_after(k)) {
                return false;
            }
        }
    }
    true
}

pub fn brute_m_separated(
    h: &MixedGraph,
    reach: &[Vec<bool>],
    a: usize,
    b: usize,
    z: &BTreeSet<usize>,
) -> bool {
    !all_paths(h, a, b).iter().any(|p| m_path_open(reach, p, z))
}

/// Subsets of `pool` in bitmask order.
pub fn subsets(pool: &[usize]) -> Vec<BTreeSet<usize>> {
    (0u32..1 << pool.len())
        .map(|m| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Seeded DMG with `nodes` nodes and `selection` selection nodes. Probabilities cycle
/// through sparse and dense settings so that samples include cycles, bidirected edges
/// and ancestors of selection nodes.
pub fn sample_dmg(nodes: usize, selection: usize, seed: u64) -> ContextedDmg {
    let densities = [
        (0.15, 0.1),
        (0.25, 0.15),
        (0.35, 0.2),
        (0.5, 0.1),
        (0.2, 0.3),
    ];
    let (pd, pb) = densities[(seed % densities.len() as u64) as usize];
    random_dmg(&GeneratorConfig::new(nodes, pd, pb, selection, seed)).unwrap()
}

/// A σ-MAG on `observed` nodes, represented from a random DMG with `selection`
/// extra selection nodes.
pub fn sample_sigma_mag(observed: usize, selection: usize, seed: u64) -> MixedGraph {
    represent(&sample_dmg(observed + selection, selection, seed)).unwrap()
}

/// Deterministic small integer stream for picking sizes.
pub fn pick(seed: u64, salt: u64, modulus: u64) -> u64 {
    let mut x = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(salt.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    x ^= x >> 31;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 29;
    x % modulus
}

/// `ant[u][v]`: a path from `u` to `v` whose every edge has a tail at its earlier
/// end exists (reflexive).
pub fn anterior_matrix(h: &MixedGraph) -> Vec<Vec<bool>> {
    let n = h.node_count();
    let mut r = vec![vec![false; n]; n];
    for (u, row) in r.iter_mut().enumerate() {
        row[u] = true;
        for e in h.incident(u) {
            if e.near == Mark::Tail {
                row[e.other] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}
