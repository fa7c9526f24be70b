//! The bridge between DMGs with selection and σ-MAGs: latent projection, the
//! representing σ-MAG, validity checks and a canonical DMG for a given σ-MAG.

mod canonical;
mod marginalize;
mod represent;
mod validate;

pub use canonical::canonical_dmg;
pub use marginalize::marginalize;
pub use represent::represent;
pub use validate::{
    validate, validate_edge_list, ValidityReport, Violation, ViolationKind, Witness,
};
