//! Reading and writing graphs, DOT export and seeded random DMGs.

mod dot;
mod format;
mod random;

pub use dot::export_dot;
pub use format::{
    graph_to_text, infer_kind, parse_edge_list, parse_graph, serialize_graph, Declaration,
    DocumentKind, Graph, GraphDocument, Item, Span,
};
pub use random::{random_dmg, GeneratorConfig};
