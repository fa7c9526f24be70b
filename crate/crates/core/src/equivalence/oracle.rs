use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ContextedDmg, MarkedGraph, MixedGraph, NodeId};
use crate::separation::{m_separated, sigma_separated, SeparationQuery};

/// Largest node count the equivalence oracles accept unless told otherwise.
pub const DEFAULT_EQUIVALENCE_ORACLE_CAP: usize = 8;

/// A pairwise query on which two graphs disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub a: NodeId,
    pub b: NodeId,
    pub z: Vec<NodeId>,
    /// Verdict in the first graph; the second graph says the opposite.
    pub separated_in_first: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovComparison {
    pub equivalent: bool,
    pub counterexample: Option<Counterexample>,
}

/// `(a, b, z, separated in the first graph)`.
type Disagreement = (usize, usize, Vec<usize>, bool);

/// Walks every pair `a < b` of `0..n` and every subset of the other nodes in bitmask
/// order, returning the first disagreement of `separated`.
fn compare_grid<F>(n: usize, mut separated: F) -> Result<Option<Disagreement>>
where
    F: FnMut(usize, usize, &[usize]) -> Result<(bool, bool)>,
{
    for a in 0..n {
        for b in a + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
            for mask in 0u64..1 << rest.len() {
                let z: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let (s1, s2) = separated(a, b, &z)?;
                if s1 != s2 {
                    return Ok(Some((a, b, z, s1)));
                }
            }
        }
    }
    Ok(None)
}

fn check_cap(nodes: usize, cap: usize) -> Result<()> {
    if nodes > cap {
        Err(Error::OracleCap { nodes, cap })
    } else {
        Ok(())
    }
}

/// Compares m-separation in `h1` and `h2` over all pairs and conditioning sets.
/// Pairs suffice: a set query is connected iff some member pair is.
pub fn m_markov_equivalent_oracle(
    h1: &MixedGraph,
    h2: &MixedGraph,
    cap: usize,
) -> Result<MarkovComparison> {
    if h1.names() != h2.names() {
        return Err(Error::InvalidQuery(
            "graphs have different node sets".into(),
        ));
    }
    check_cap(h1.node_count(), cap)?;
    let found = compare_grid(h1.node_count(), |a, b, z| {
        let q = SeparationQuery::pair(a, b, z.iter().copied());
        Ok((
            m_separated(h1, &q)?.separated,
            m_separated(h2, &q)?.separated,
        ))
    })?;
    let name = |v: usize| h1.names()[v].clone();
    Ok(MarkovComparison {
        equivalent: found.is_none(),
        counterexample: found.map(|(a, b, z, s)| Counterexample {
            a: name(a),
            b: name(b),
            z: z.into_iter().map(name).collect(),
            separated_in_first: s,
        }),
    })
}

/// Compares σ-separation given `Z ∪ S` over all pairs of observed nodes and all
/// conditioning sets of observed nodes. The cap applies to the observed node count.
pub fn sigma_markov_equivalent_oracle(
    g1: &ContextedDmg,
    g2: &ContextedDmg,
    cap: usize,
) -> Result<MarkovComparison> {
    if g1.graph.names() != g2.graph.names() {
        return Err(Error::InvalidQuery(
            "graphs have different node sets".into(),
        ));
    }
    if g1.selection() != g2.selection() {
        return Err(Error::InvalidQuery(
            "graphs have different selection sets".into(),
        ));
    }
    let observed = g1.observed();
    check_cap(observed.len(), cap)?;
    let sel: BTreeSet<usize> = g1.selection().clone();
    let found = compare_grid(observed.len(), |a, b, z| {
        let zs = z.iter().map(|&i| observed[i]).chain(sel.iter().copied());
        let q = SeparationQuery::pair(observed[a], observed[b], zs);
        Ok((
            sigma_separated(&g1.graph, &q)?.separated,
            sigma_separated(&g2.graph, &q)?.separated,
        ))
    })?;
    let name = |i: usize| g1.graph.names()[observed[i]].clone();
    Ok(MarkovComparison {
        equivalent: found.is_none(),
        counterexample: found.map(|(a, b, z, s)| Counterexample {
            a: name(a),
            b: name(b),
            z: z.into_iter().map(name).collect(),
            separated_in_first: s,
        }),
    })
}
