use crate::graph::{Mark, MarkedGraph};

use super::format::Graph;

fn quote(name: &str) -> String {
    format!("\"{name}\"")
}

/// Graphviz text for `graph`. Selection nodes are drawn as boxes, bidirected edges
/// with `dir=both` and undirected edges with `dir=none`.
pub fn export_dot(graph: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    let edge = |a: &str, b: &str, attr: &str| format!("  {} -> {}{attr};\n", quote(a), quote(b));
    match graph {
        Graph::Dmg(c) => {
            let g = &c.graph;
            for v in 0..g.node_count() {
                let shape = if c.is_selection(v) {
                    " [shape=box]"
                } else {
                    ""
                };
                out.push_str(&format!("  {}{shape};\n", quote(g.name(v))));
            }
            for &(t, h) in g.directed_edges() {
                out.push_str(&edge(g.name(t), g.name(h), ""));
            }
            for &(a, b) in g.bidirected_edges() {
                out.push_str(&edge(g.name(a), g.name(b), " [dir=both]"));
            }
        }
        Graph::Mixed(h) => {
            for v in 0..h.node_count() {
                out.push_str(&format!("  {};\n", quote(h.name(v))));
            }
            for e in h.edges() {
                let (a, b) = (h.name(e.a), h.name(e.b));
                out.push_str(&match (e.mark_at_a, e.mark_at_b) {
                    (Mark::Tail, Mark::Arrowhead) => edge(a, b, ""),
                    (Mark::Arrowhead, Mark::Tail) => edge(b, a, ""),
                    (Mark::Arrowhead, Mark::Arrowhead) => edge(a, b, " [dir=both]"),
                    (Mark::Tail, Mark::Tail) => edge(a, b, " [dir=none]"),
                });
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_graph, DocumentKind};

    fn dot(text: &str, kind: DocumentKind) -> String {
        export_dot(&parse_graph(text, kind).unwrap().to_graph().unwrap())
    }

    #[test]
    fn empty_mixed_graph() {
        assert_eq!(dot("", DocumentKind::Mixed), "digraph G {\n}\n");
    }

    #[test]
    fn single_edge() {
        let out = dot("a -> b", DocumentKind::Dmg);
        assert_eq!(out.matches(" -> ").count(), 1);
        assert!(out.contains("  \"a\" -> \"b\";\n"));
    }

    #[test]
    fn attributes() {
        let out = dot("selection s\na -> s\nb <-> a\n", DocumentKind::Dmg);
        assert!(out.contains("\"s\" [shape=box];"));
        assert!(out.contains("\"a\" -> \"b\" [dir=both];"));
        let out = dot("b <- a\nb -- c\n", DocumentKind::Mixed);
        assert!(out.contains("\"a\" -> \"b\";"));
        assert!(out.contains("\"b\" -> \"c\" [dir=none];"));
    }
}
