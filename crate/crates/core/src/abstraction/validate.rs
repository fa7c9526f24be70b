use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::family::anteriors_mask;
use crate::graph::mixed::parse_symbol;
use crate::graph::node::is_identifier;
use crate::graph::{neighborhood, MarkedGraph, MixedGraph, NodeId, Step, Walk};
use crate::separation::shortest_inducing_path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    MultiEdge,
    AncestralViolation,
    MaximalityViolation,
    SigmaCompletenessViolation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::MultiEdge => "multi-edge",
            ViolationKind::AncestralViolation => "ancestral",
            ViolationKind::MaximalityViolation => "maximality",
            ViolationKind::SigmaCompletenessViolation => "sigma-completeness",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Node indices, e.g. a pair carrying two edges or a triple `a *-> b -- c`.
    Nodes(Vec<usize>),
    Path(Walk),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Witness,
}

/// Result of [`validate`]. Witness indices refer to `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub names: Vec<NodeId>,
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> BTreeSet<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }

    /// Renders a witness with node names: paths with their edges, tuples in parentheses.
    pub fn describe(&self, witness: &Witness) -> String {
        match witness {
            Witness::Nodes(vs) => {
                let parts: Vec<&str> = vs.iter().map(|&v| self.names[v].as_str()).collect();
                format!("({})", parts.join(", "))
            }
            Witness::Path(w) => {
                let mut out = self.names[w.start()].to_string();
                for s in w.steps() {
                    out.push_str(&format!(
                        " {} {}",
                        crate::graph::node::edge_symbol(s.mark_from, s.mark_to),
                        self.names[s.to]
                    ));
                }
                out
            }
        }
    }
}

/// Shortest anterior path from `a` to `b`: every edge has a tail at its earlier end.
fn anterior_path(h: &MixedGraph, a: usize, b: usize) -> Option<Walk> {
    let n = h.node_count();
    let mut prev: Vec<Option<(usize, Step)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut steps = Vec::new();
            let mut at = b;
            while let Some((p, s)) = prev[at] {
                steps.push(s);
                at = p;
            }
            steps.reverse();
            return Some(Walk::new(a, steps));
        }
        for e in h.incident(v) {
            if e.near.is_tail() && !seen[e.other] {
                seen[e.other] = true;
                prev[e.other] = Some((
                    v,
                    Step {
                        to: e.other,
                        mark_from: e.near,
                        mark_to: e.far,
                    },
                ));
                queue.push_back(e.other);
            }
        }
    }
    None
}

/// Checks that `h` is a σ-MAG and reports every violation found.
///
/// Ancestral violations are reported per ordered pair with an anterior path followed
/// by the offending edge; maximality violations per non-adjacent pair with a shortest
/// inducing path; σ-completeness violations as `(a, b, c)` for `a *-> b -- c` with
/// `a`, `c` non-adjacent and `(a, b, c, d)` for undirected neighbors `c`, `d` of `b`
/// that are non-adjacent although `b` has an arrowhead.
pub fn validate(h: &MixedGraph) -> ValidityReport {
    let n = h.node_count();
    let mut violations = Vec::new();

    for b in 0..n {
        let ant = anteriors_mask(h, &[b]);
        for e in h.incident(b) {
            let a = e.other;
            if e.far.is_arrowhead() && ant[a] {
                let mut walk = anterior_path(h, a, b).expect("a is anterior to b");
                walk.push(Step {
                    to: a,
                    mark_from: e.near,
                    mark_to: e.far,
                });
                violations.push(Violation {
                    kind: ViolationKind::AncestralViolation,
                    witness: Witness::Path(walk),
                });
            }
        }
    }
    // ordered by the offending pair (a, b)
    violations.sort_by_key(|v| match &v.witness {
        Witness::Path(w) => (w.start(), w.node(w.len() - 1)),
        Witness::Nodes(_) => unreachable!(),
    });

    for a in 0..n {
        for b in a + 1..n {
            if h.is_adjacent(a, b) {
                continue;
            }
            if let Some(p) = shortest_inducing_path(h, a, b).expect("valid pair") {
                violations.push(Violation {
                    kind: ViolationKind::MaximalityViolation,
                    witness: Witness::Path(p),
                });
            }
        }
    }

    let mut triples = BTreeSet::new();
    let mut quads = BTreeSet::new();
    for b in 0..n {
        let nbh: Vec<usize> = neighborhood(h, b).into_iter().collect();
        let heads: Vec<usize> = h
            .incident(b)
            .iter()
            .filter(|e| e.near.is_arrowhead())
            .map(|e| e.other)
            .collect();
        let Some(&first) = heads.first() else {
            continue;
        };
        for &a in &heads {
            for &c in &nbh {
                if !h.is_adjacent(a, c) {
                    triples.insert((a, b, c));
                }
            }
        }
        for (i, &c) in nbh.iter().enumerate() {
            for &d in &nbh[i + 1..] {
                if !h.is_adjacent(c, d) {
                    quads.insert((first, b, c, d));
                }
            }
        }
    }
    for (a, b, c) in triples {
        violations.push(Violation {
            kind: ViolationKind::SigmaCompletenessViolation,
            witness: Witness::Nodes(vec![a, b, c]),
        });
    }
    for (a, b, c, d) in quads {
        violations.push(Violation {
            kind: ViolationKind::SigmaCompletenessViolation,
            witness: Witness::Nodes(vec![a, b, c, d]),
        });
    }

    ValidityReport {
        names: h.names().to_vec(),
        violations,
    }
}

/// Validates a raw edge list, which may put several edges on one pair.
///
/// Pairs with more than one edge are reported as multi-edge violations and end the
/// check; otherwise the list is built into a [`MixedGraph`] and passed to [`validate`].
pub fn validate_edge_list(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Result<ValidityReport> {
    let mut names: BTreeSet<&str> = nodes.iter().copied().collect();
    for &(a, sym, b) in edges {
        if parse_symbol(sym).is_none() {
            return Err(Error::InvalidQuery(format!("unknown edge symbol `{sym}`")));
        }
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        names.insert(a);
        names.insert(b);
    }
    if let Some(bad) = names.iter().find(|s| !is_identifier(s)) {
        return Err(Error::InvalidName(bad.to_string()));
    }
    let names: Vec<&str> = names.into_iter().collect();
    let index = |s: &str| names.binary_search(&s).expect("collected above");
    let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, _, b) in edges {
        let (i, j) = (index(a), index(b));
        *per_pair.entry((i.min(j), i.max(j))).or_default() += 1;
    }
    let multi: Vec<Violation> = per_pair
        .iter()
        .filter(|(_, &count)| count > 1)
        .map(|(&(i, j), _)| Violation {
            kind: ViolationKind::MultiEdge,
            witness: Witness::Nodes(vec![i, j]),
        })
        .collect();
    if !multi.is_empty() {
        return Ok(ValidityReport {
            names: names
                .iter()
                .map(|s| NodeId::new(*s))
                .collect::<Result<_>>()?,
            violations: multi,
        });
    }
    Ok(validate(&MixedGraph::from_edges(nodes, edges)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed(edges: &[(&str, &str, &str)]) -> MixedGraph {
        MixedGraph::from_edges(&[], edges).unwrap()
    }

    fn nonmaximal() -> MixedGraph {
        mixed(&[
            ("a", "<->", "b"),
            ("b", "<->", "c"),
            ("c", "<->", "d"),
            ("b", "->", "d"),
            ("c", "->", "a"),
        ])
    }

    #[test]
    fn nonmaximal_is_not_maximal() {
        let r = validate(&nonmaximal());
        assert!(!r.valid());
        assert_eq!(r.kinds(), [ViolationKind::MaximalityViolation].into());
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.describe(&r.violations[0].witness), "a <-> b <-> c <-> d");
    }

    #[test]
    fn example_sigma_mags_are_valid() {
        let h2 = mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("c", "--", "a"),
            ("d", "<->", "a"),
            ("d", "<->", "b"),
            ("d", "<->", "c"),
        ]);
        assert!(validate(&h2).valid());
        let h1 = mixed(&[
            ("a", "--", "b"),
            ("b", "--", "c"),
            ("c", "--", "a"),
            ("a", "->", "d"),
        ]);
        assert!(validate(&h1).valid());
        let h3 = mixed(&[("a", "--", "b"), ("c", "--", "a"), ("a", "->", "d")]);
        assert!(validate(&h3).valid());
    }

    #[test]
    fn single_node_is_valid() {
        let h = MixedGraph::from_edges(&["a"], &[]).unwrap();
        assert!(validate(&h).valid());
    }

    #[test]
    fn arrow_into_undirected_edge_needs_a_shield() {
        let h = mixed(&[("a", "->", "b"), ("b", "--", "c")]);
        let r = validate(&h);
        assert_eq!(
            r.kinds(),
            [ViolationKind::SigmaCompletenessViolation].into()
        );
        assert_eq!(r.describe(&r.violations[0].witness), "(a, b, c)");
    }

    #[test]
    fn undirected_neighbors_of_an_arrowhead_node_must_be_adjacent() {
        let h = mixed(&[
            ("a", "->", "b"),
            ("b", "--", "c"),
            ("b", "--", "d"),
            ("a", "->", "c"),
            ("a", "->", "d"),
        ]);
        let r = validate(&h);
        let shown: Vec<String> = r
            .violations
            .iter()
            .map(|v| r.describe(&v.witness))
            .collect();
        assert!(shown.contains(&"(a, b, c, d)".to_string()), "{shown:?}");
    }

    #[test]
    fn directed_cycle_is_not_ancestral() {
        let h = mixed(&[("a", "->", "b"), ("b", "->", "c"), ("c", "->", "a")]);
        let r = validate(&h);
        assert_eq!(r.kinds(), [ViolationKind::AncestralViolation].into());
        assert_eq!(r.violations.len(), 3);
        assert_eq!(r.describe(&r.violations[0].witness), "a -> b -> c -> a");
    }

    #[test]
    fn edge_list_with_two_edges_on_a_pair() {
        let r = validate_edge_list(&[], &[("a", "->", "b"), ("b", "<->", "a")]).unwrap();
        assert_eq!(r.kinds(), [ViolationKind::MultiEdge].into());
        assert_eq!(r.describe(&r.violations[0].witness), "(a, b)");
        assert!(validate_edge_list(&[], &[("a", "--", "a")]).is_err());
        assert!(validate_edge_list(&[], &[("a", "->", "b")])
            .unwrap()
            .valid());
    }
}
