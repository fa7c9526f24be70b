//! Graph representations, family relations and walks.

pub mod dmg;
pub mod family;
pub mod mixed;
pub mod node;
pub mod paths;
pub mod walk;

pub use dmg::{ContextedDmg, DirectedMixedGraph, DmgBuilder};
pub use family::{
    ancestors, anteriors, collider_distance_sum, descendants, mixed_ancestors, neighborhood,
    neighborhood_complete, strongly_connected_components, Sccs,
};
pub use mixed::{MixedBuilder, MixedEdge, MixedGraph};
pub use node::{Incidence, Mark, MarkedGraph, NodeId};
pub use paths::{enumerate_simple_paths, simple_paths_between, SimplePaths};
pub use walk::{collider_status, Position, Segment, SegmentPartition, Step, Walk};
