use std::collections::BTreeSet;

use super::validate::validate;
use crate::error::{Error, Result};
use crate::graph::{
    neighborhood_complete, ContextedDmg, DirectedMixedGraph, Mark, MarkedGraph, MixedGraph,
};

/// Smallest unused name among `base`, `base_1`, `base_2`, ...
fn fresh_name(base: String, taken: &BTreeSet<String>) -> String {
    if !taken.contains(&base) {
        return base;
    }
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|name| !taken.contains(name))
        .expect("unbounded suffixes")
}

/// A DMG with selection nodes that `h` represents.
///
/// Directed and bidirected edges are copied. An undirected edge `a -- b` becomes
/// `a -> s_a_b <- b` with a new selection node when the neighborhood of `a` or of `b`
/// is incomplete, and the 2-cycle `a -> b -> a` otherwise.
pub fn canonical_dmg(h: &MixedGraph) -> Result<ContextedDmg> {
    let report = validate(h);
    if let Some(v) = report.violations.first() {
        return Err(Error::Precondition(format!(
            "not a σ-MAG: {} violation {}",
            v.kind,
            report.describe(&v.witness)
        )));
    }
    let mut taken: BTreeSet<String> = h.names().iter().map(|n| n.to_string()).collect();
    let mut builder = DirectedMixedGraph::builder();
    for name in h.names() {
        builder = builder.node(name.as_str());
    }
    let mut selection = Vec::new();
    for e in h.edges() {
        let (a, b) = (h.name(e.a), h.name(e.b));
        builder = match (e.mark_at_a, e.mark_at_b) {
            (Mark::Tail, Mark::Arrowhead) => builder.directed(a, b),
            (Mark::Arrowhead, Mark::Tail) => builder.directed(b, a),
            (Mark::Arrowhead, Mark::Arrowhead) => builder.bidirected(a, b),
            (Mark::Tail, Mark::Tail) => {
                if neighborhood_complete(h, e.a) && neighborhood_complete(h, e.b) {
                    builder.directed(a, b).directed(b, a)
                } else {
                    let s = fresh_name(format!("s_{a}_{b}"), &taken);
                    taken.insert(s.clone());
                    let out = builder.directed(a, &s).directed(b, &s);
                    selection.push(s);
                    out
                }
            }
        };
    }
    let g = builder.build()?;
    let refs: Vec<&str> = selection.iter().map(String::as_str).collect();
    ContextedDmg::with_selection_names(g, &refs)
}
