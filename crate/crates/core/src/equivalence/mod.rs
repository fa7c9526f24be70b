//! Markov equivalence: unshielded colliders, discriminating paths, the decision
//! procedure on σ-MAGs and exhaustive oracles over separation tables.

mod condition;
mod discriminating;
mod oracle;

pub use condition::{
    condition1, unshielded_colliders, Clause, EquivalenceReport, EquivalenceWitness,
};
pub use discriminating::{
    discriminating_paths, discriminating_paths_bounded, is_discriminating, DiscriminatingPath,
};
pub use oracle::{
    m_markov_equivalent_oracle, sigma_markov_equivalent_oracle, Counterexample, MarkovComparison,
    DEFAULT_EQUIVALENCE_ORACLE_CAP,
};
