//! σ-separation on DMGs, m-separation on mixed graphs and inducing-path predicates.
//!
//! Each criterion has a reachability engine (polynomial) and an enumeration oracle
//! over simple paths. Set queries reduce to walks between members: the blocking rules
//! only ever test the conditioning set, so a walk between any `x` and `y` decides.

mod inducing;
mod msep;
mod sigma;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{MarkedGraph, Walk};

pub use inducing::{
    inducing_exists, inducing_paths, shortest_inducing_path, sigma_inducing_exists,
    sigma_inducing_paths, SigmaInducingPath,
};
pub use msep::{m_open_walk, m_separated, m_separated_oracle, MPathOracle};
pub use sigma::{
    sigma_open_path_segments, sigma_open_walk, sigma_separated, sigma_separated_oracle,
    walk_to_open_path, SigmaPathOracle,
};

/// Largest graph the separation oracles accept unless told otherwise.
pub const DEFAULT_SEPARATION_ORACLE_CAP: usize = 12;

/// Is `X` separated from `Y` given `Z`? Members of `X` or `Y` may lie in `Z`; they
/// are then blocked at the endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationQuery {
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
    pub z: BTreeSet<usize>,
}

impl SeparationQuery {
    pub fn new(
        x: impl IntoIterator<Item = usize>,
        y: impl IntoIterator<Item = usize>,
        z: impl IntoIterator<Item = usize>,
    ) -> Self {
        SeparationQuery {
            x: x.into_iter().collect(),
            y: y.into_iter().collect(),
            z: z.into_iter().collect(),
        }
    }

    pub fn pair(a: usize, b: usize, z: impl IntoIterator<Item = usize>) -> Self {
        SeparationQuery::new([a], [b], z)
    }

    pub fn from_names<G: MarkedGraph, S: AsRef<str>>(
        g: &G,
        x: &[S],
        y: &[S],
        z: &[S],
    ) -> Result<Self> {
        Ok(SeparationQuery::new(
            g.indices_of(x)?,
            g.indices_of(y)?,
            g.indices_of(z)?,
        ))
    }

    /// The same query with `X` and `Y` exchanged.
    pub fn swapped(&self) -> Self {
        SeparationQuery {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub(crate) fn check<G: MarkedGraph>(&self, g: &G) -> Result<()> {
        if self.x.is_empty() || self.y.is_empty() {
            return Err(Error::InvalidQuery("X and Y must be nonempty".into()));
        }
        let n = g.node_count();
        if let Some(&v) = self
            .x
            .iter()
            .chain(&self.y)
            .chain(&self.z)
            .find(|&&v| v >= n)
        {
            return Err(Error::UnknownNode(format!("#{v}")));
        }
        Ok(())
    }

    /// A member of `X ∩ Y` outside `Z`, connected to itself by the trivial walk.
    pub(crate) fn trivially_connected(&self) -> Option<usize> {
        self.x
            .intersection(&self.y)
            .find(|v| !self.z.contains(v))
            .copied()
    }
}

/// Outcome of a separation query. A connected verdict carries an open path (or, for
/// mixed graphs that are not σ-MAGs and have no open path, an open walk).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationVerdict {
    pub separated: bool,
    pub witness: Option<Walk>,
}

impl SeparationVerdict {
    pub fn separated() -> Self {
        SeparationVerdict {
            separated: true,
            witness: None,
        }
    }

    pub fn connected(witness: Walk) -> Self {
        SeparationVerdict {
            separated: false,
            witness: Some(witness),
        }
    }
}

pub(crate) fn check_cap<G: MarkedGraph>(g: &G, cap: usize) -> Result<()> {
    if g.node_count() > cap {
        Err(Error::OracleCap {
            nodes: g.node_count(),
            cap,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_z<G: MarkedGraph>(g: &G, z: &BTreeSet<usize>) -> Result<()> {
    match z.iter().find(|&&v| v >= g.node_count()) {
        Some(v) => Err(Error::UnknownNode(format!("#{v}"))),
        None => Ok(()),
    }
}
