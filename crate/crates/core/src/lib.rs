//! Directed mixed graphs with cycles and selection nodes, their abstraction into
//! σ-maximal ancestral graphs, and separation and Markov-equivalence checks on both.

pub mod abstraction;
pub mod equivalence;
pub mod error;
pub mod graph;
pub mod io;
pub mod separation;

pub use error::{Error, Result};
pub use graph::*;
