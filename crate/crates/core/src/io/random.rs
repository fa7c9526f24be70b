use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::{ContextedDmg, DirectedMixedGraph, NodeId};

/// Parameters of [`random_dmg`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub nodes: usize,
    pub p_directed: f64,
    pub p_bidirected: f64,
    /// The last this many nodes become selection nodes.
    pub selection: usize,
    pub seed: u64,
    /// Keep edges out of selection nodes. Off by default, which makes them childless.
    pub allow_selection_children: bool,
}

impl GeneratorConfig {
    pub fn new(
        nodes: usize,
        p_directed: f64,
        p_bidirected: f64,
        selection: usize,
        seed: u64,
    ) -> Self {
        GeneratorConfig {
            nodes,
            p_directed,
            p_bidirected,
            selection,
            seed,
            allow_selection_children: false,
        }
    }

    fn check(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Config("at least one node is required".into()));
        }
        if self.selection >= self.nodes {
            return Err(Error::Config(format!(
                "{} selection nodes leave no observed node among {}",
                self.selection, self.nodes
            )));
        }
        for (what, p) in [
            ("p_directed", self.p_directed),
            ("p_bidirected", self.p_bidirected),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{what} = {p} is not a probability")));
            }
        }
        Ok(())
    }
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws a DMG over `v1..vN`: each ordered pair gets a directed edge with probability
/// `p_directed`, then each unordered pair a bidirected edge with probability
/// `p_bidirected`. The same config always gives the same graph.
pub fn random_dmg(cfg: &GeneratorConfig) -> Result<ContextedDmg> {
    cfg.check()?;
    let n = cfg.nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let first_selected = n - cfg.selection;
    // positions in generation order, v1 first
    let label: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut directed = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && unit(&mut rng) < cfg.p_directed {
                directed.push((i, j));
            }
        }
    }
    let mut bidirected = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if unit(&mut rng) < cfg.p_bidirected {
                bidirected.push((i, j));
            }
        }
    }
    if !cfg.allow_selection_children {
        directed.retain(|&(t, _)| t < first_selected);
    }

    let names: Vec<NodeId> = {
        let mut v: Vec<NodeId> = label
            .iter()
            .map(|s| NodeId::new(s.as_str()))
            .collect::<Result<_>>()?;
        v.sort();
        v
    };
    let index = |i: usize| {
        names
            .binary_search_by(|n| n.as_str().cmp(&label[i]))
            .expect("generated name")
    };
    let directed: BTreeSet<(usize, usize)> = directed
        .into_iter()
        .map(|(t, h)| (index(t), index(h)))
        .collect();
    let bidirected: BTreeSet<(usize, usize)> = bidirected
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (index(a), index(b));
            (x.min(y), x.max(y))
        })
        .collect();
    let selection: BTreeSet<usize> = (first_selected..n).map(index).collect();
    ContextedDmg::new(
        DirectedMixedGraph::from_indexed(names, directed, bidirected),
        selection,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MarkedGraph;
    use crate::io::{graph_to_text, Graph};

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig::new(6, 0.3, 0.2, 1, 7);
        assert_eq!(random_dmg(&cfg).unwrap(), random_dmg(&cfg).unwrap());
        let other = GeneratorConfig {
            seed: 8,
            ..cfg.clone()
        };
        assert_ne!(random_dmg(&cfg).unwrap(), random_dmg(&other).unwrap());
    }

    #[test]
    fn selection_nodes_are_childless_by_default() {
        for seed in 0..20 {
            let cfg = GeneratorConfig::new(5, 0.6, 0.2, 2, seed);
            let c = random_dmg(&cfg).unwrap();
            let sel: Vec<&str> = c.selection().iter().map(|&s| c.graph.name(s)).collect();
            assert_eq!(sel, ["v4", "v5"]);
            for &s in c.selection() {
                assert!(c.graph.children(s).is_empty());
            }
        }
    }

    #[test]
    fn extreme_probabilities() {
        let full = random_dmg(&GeneratorConfig {
            allow_selection_children: true,
            ..GeneratorConfig::new(4, 1.0, 1.0, 1, 0)
        })
        .unwrap();
        assert_eq!(full.graph.directed_edges().len(), 12);
        assert_eq!(full.graph.bidirected_edges().len(), 6);
        let empty = random_dmg(&GeneratorConfig::new(4, 0.0, 0.0, 0, 0)).unwrap();
        assert_eq!(empty.graph.edge_count(), 0);
        assert_eq!(
            graph_to_text(&Graph::Dmg(empty)),
            "node v1\nnode v2\nnode v3\nnode v4\n"
        );
    }

    #[test]
    fn rejects_bad_configs() {
        for cfg in [
            GeneratorConfig::new(0, 0.1, 0.1, 0, 0),
            GeneratorConfig::new(3, 0.1, 0.1, 3, 0),
            GeneratorConfig::new(3, 1.5, 0.1, 0, 0),
            GeneratorConfig::new(3, 0.1, f64::NAN, 0, 0),
        ] {
            assert!(matches!(random_dmg(&cfg), Err(Error::Config(_))));
        }
    }
}
