//! The line-oriented graph text format.
//!
//! ```text
//! # comment
//! node x
//! selection s
//! a -> b
//! a <- b
//! a <-> b
//! a -- b
//! ```
//!
//! Edge lines declare their endpoints. `selection` lines are only allowed in DMG
//! documents, `--` edges only in mixed documents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::mixed::parse_symbol;
use crate::graph::node::{edge_symbol, is_identifier};
use crate::graph::{ContextedDmg, DirectedMixedGraph, Mark, MarkedGraph, MixedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DocumentKind {
    Dmg,
    Mixed,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocumentKind::Dmg => "dmg",
            DocumentKind::Mixed => "mixed",
        })
    }
}

/// 1-based position of a declaration in its source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Node(String),
    Selection(String),
    /// `a`, the marks at `a` and at `b`, then `b`.
    Edge(String, Mark, Mark, String),
}

#[derive(Debug, Clone)]
pub struct Declaration {
    pub item: Item,
    pub span: Span,
}

/// A parsed document. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct GraphDocument {
    pub kind: DocumentKind,
    pub declarations: Vec<Declaration>,
}

impl PartialEq for GraphDocument {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.declarations.len() == other.declarations.len()
            && self
                .declarations
                .iter()
                .zip(&other.declarations)
                .all(|(x, y)| x.item == y.item)
    }
}

impl Eq for GraphDocument {}

/// A graph built from a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Dmg(ContextedDmg),
    Mixed(MixedGraph),
}

fn parse_error(span: Span, message: impl Into<String>) -> Error {
    Error::Parse {
        line: span.line,
        column: span.column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns, comments removed.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &code[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &code[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (code[..byte].chars().count() + 1, tok))
        .collect()
}

fn identifier(tok: (usize, &str), line: usize) -> Result<String> {
    if is_identifier(tok.1) {
        Ok(tok.1.to_string())
    } else {
        Err(parse_error(
            Span {
                line,
                column: tok.0,
            },
            format!("invalid node name `{}`", tok.1),
        ))
    }
}

/// Guesses the kind of a document: `--` edges mean mixed, `selection` lines mean DMG,
/// and DMG is the default.
pub fn infer_kind(text: &str) -> DocumentKind {
    let mut kind = DocumentKind::Dmg;
    for line in text.lines() {
        let toks = tokens(line);
        if toks.len() == 3 && toks[1].1 == "--" {
            kind = DocumentKind::Mixed;
        }
        if toks.first().is_some_and(|t| t.1 == "selection") {
            return DocumentKind::Dmg;
        }
    }
    kind
}

/// Parses `text` as a document of the given kind, rejecting anything the corresponding
/// graph type cannot hold.
pub fn parse_graph(text: &str, kind: DocumentKind) -> Result<GraphDocument> {
    parse(text, kind, true)
}

/// Parses a mixed document but lets a pair carry several edges, so that a validator
/// can report them. Such a document cannot be turned into a [`Graph`].
pub fn parse_edge_list(text: &str) -> Result<GraphDocument> {
    parse(text, DocumentKind::Mixed, false)
}

fn parse(text: &str, kind: DocumentKind, one_edge_per_pair: bool) -> Result<GraphDocument> {
    let mut declarations = Vec::new();
    // duplicate tracking: DMG keys are (tail, head) or sorted pairs for <->,
    // mixed keys are sorted pairs
    let mut directed: BTreeSet<(String, String)> = BTreeSet::new();
    let mut bidirected: BTreeSet<(String, String)> = BTreeSet::new();
    let mut pairs: BTreeMap<(String, String), usize> = BTreeMap::new();

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let span = Span {
            line: lineno,
            column: toks[0].0,
        };
        let item = match toks.as_slice() {
            [(_, "node"), name] => Item::Node(identifier(*name, lineno)?),
            [(_, "selection"), name] => {
                if kind == DocumentKind::Mixed {
                    return Err(parse_error(
                        span,
                        "selection nodes are not allowed in a mixed graph",
                    ));
                }
                Item::Selection(identifier(*name, lineno)?)
            }
            [a, sym, b] => {
                let sym_span = Span {
                    line: lineno,
                    column: sym.0,
                };
                let (ma, mb) = parse_symbol(sym.1)
                    .ok_or_else(|| parse_error(sym_span, format!("unknown edge `{}`", sym.1)))?;
                let (x, y) = (identifier(*a, lineno)?, identifier(*b, lineno)?);
                if x == y {
                    return Err(parse_error(span, format!("self-loop on `{x}`")));
                }
                let key = if x < y {
                    (x.clone(), y.clone())
                } else {
                    (y.clone(), x.clone())
                };
                match kind {
                    DocumentKind::Dmg => {
                        let fresh = match (ma, mb) {
                            (Mark::Tail, Mark::Arrowhead) => {
                                directed.insert((x.clone(), y.clone()))
                            }
                            (Mark::Arrowhead, Mark::Tail) => {
                                directed.insert((y.clone(), x.clone()))
                            }
                            (Mark::Arrowhead, Mark::Arrowhead) => bidirected.insert(key),
                            (Mark::Tail, Mark::Tail) => {
                                return Err(parse_error(
                                    sym_span,
                                    "undirected edges are not allowed in a DMG",
                                ))
                            }
                        };
                        if !fresh {
                            return Err(parse_error(
                                span,
                                format!("duplicate edge {x} {} {y}", sym.1),
                            ));
                        }
                    }
                    DocumentKind::Mixed if one_edge_per_pair => {
                        if let Some(first) = pairs.insert(key, lineno) {
                            return Err(parse_error(
                                span,
                                format!(
                                    "second edge between `{x}` and `{y}` (first on line {first})"
                                ),
                            ));
                        }
                    }
                    DocumentKind::Mixed => {}
                }
                Item::Edge(x, ma, mb, y)
            }
            _ => {
                return Err(parse_error(
                    span,
                    "expected `node <id>`, `selection <id>` or `<id> <edge> <id>`",
                ))
            }
        };
        declarations.push(Declaration { item, span });
    }
    Ok(GraphDocument { kind, declarations })
}

impl GraphDocument {
    /// Builds the graph. Parsing has already ruled out the structural errors.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut nodes = BTreeSet::new();
        let mut selection = Vec::new();
        for d in &self.declarations {
            match &d.item {
                Item::Node(n) => {
                    nodes.insert(n.as_str());
                }
                Item::Selection(s) => {
                    nodes.insert(s.as_str());
                    selection.push(s.as_str());
                }
                Item::Edge(..) => {}
            }
        }
        match self.kind {
            DocumentKind::Dmg => {
                let mut b = DirectedMixedGraph::builder();
                for n in &nodes {
                    b = b.node(n);
                }
                for d in &self.declarations {
                    if let Item::Edge(x, mx, my, y) = &d.item {
                        b = match (mx, my) {
                            (Mark::Tail, Mark::Arrowhead) => b.directed(x, y),
                            (Mark::Arrowhead, Mark::Tail) => b.directed(y, x),
                            _ => b.bidirected(x, y),
                        };
                    }
                }
                let g = b.build()?;
                Ok(Graph::Dmg(ContextedDmg::with_selection_names(
                    g, &selection,
                )?))
            }
            DocumentKind::Mixed => {
                let mut b = MixedGraph::builder();
                for n in &nodes {
                    b = b.node(n);
                }
                for d in &self.declarations {
                    if let Item::Edge(x, mx, my, y) = &d.item {
                        b = b.edge(x, *mx, y, *my);
                    }
                }
                Ok(Graph::Mixed(b.build()?))
            }
        }
    }

    /// The normalized document of a graph: uncovered nodes, then selection nodes,
    /// then edges, each sorted.
    pub fn from_graph(graph: &Graph) -> GraphDocument {
        let decl = |item| Declaration {
            item,
            span: Span::default(),
        };
        let mut edges = Vec::new();
        let mut covered = BTreeSet::new();
        let (kind, names, selection) = match graph {
            Graph::Dmg(c) => {
                let g = &c.graph;
                for &(t, h) in g.directed_edges() {
                    edges.push((t, Mark::Tail, Mark::Arrowhead, h));
                }
                for &(a, b) in g.bidirected_edges() {
                    edges.push((a, Mark::Arrowhead, Mark::Arrowhead, b));
                }
                (DocumentKind::Dmg, g.names(), c.selection().clone())
            }
            Graph::Mixed(h) => {
                for e in h.edges() {
                    edges.push(match (e.mark_at_a, e.mark_at_b) {
                        (Mark::Arrowhead, Mark::Tail) => (e.b, Mark::Tail, Mark::Arrowhead, e.a),
                        _ => (e.a, e.mark_at_a, e.mark_at_b, e.b),
                    });
                }
                (DocumentKind::Mixed, h.names(), BTreeSet::new())
            }
        };
        for &(a, _, _, b) in &edges {
            covered.insert(a);
            covered.insert(b);
        }
        let mut declarations = Vec::new();
        for (v, name) in names.iter().enumerate() {
            if !covered.contains(&v) && !selection.contains(&v) {
                declarations.push(decl(Item::Node(name.to_string())));
            }
        }
        for &s in &selection {
            declarations.push(decl(Item::Selection(names[s].to_string())));
        }
        for (a, ma, mb, b) in edges {
            declarations.push(decl(Item::Edge(
                names[a].to_string(),
                ma,
                mb,
                names[b].to_string(),
            )));
        }
        GraphDocument { kind, declarations }
    }
}

/// One declaration per line, in document order.
pub fn serialize_graph(doc: &GraphDocument) -> String {
    let mut out = String::new();
    for d in &doc.declarations {
        match &d.item {
            Item::Node(n) => out.push_str(&format!("node {n}\n")),
            Item::Selection(s) => out.push_str(&format!("selection {s}\n")),
            Item::Edge(a, ma, mb, b) => {
                out.push_str(&format!("{a} {} {b}\n", edge_symbol(*ma, *mb)))
            }
        }
    }
    out
}

/// Normalized text of a graph.
pub fn graph_to_text(graph: &Graph) -> String {
    serialize_graph(&GraphDocument::from_graph(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MARGINAL: &str = "\
# two-cycle with selection
selection s
a -> b
b -> a
b -> s
c -> s
b <-> d
";

    #[test]
    fn marginal_round_trip() {
        let doc = parse_graph(MARGINAL, DocumentKind::Dmg).unwrap();
        let graph = doc.to_graph().unwrap();
        let Graph::Dmg(c) = &graph else { panic!() };
        assert_eq!(c.graph.edge_count(), 5);
        let text = graph_to_text(&graph);
        assert_eq!(
            text,
            MARGINAL.trim_start_matches("# two-cycle with selection\n")
        );
        assert_eq!(
            parse_graph(&text, DocumentKind::Dmg).unwrap(),
            GraphDocument::from_graph(&graph)
        );
    }

    #[test]
    fn empty_text() {
        for kind in [DocumentKind::Dmg, DocumentKind::Mixed] {
            let doc = parse_graph("", kind).unwrap();
            assert!(doc.declarations.is_empty());
            let g = doc.to_graph();
            match (kind, g) {
                (DocumentKind::Mixed, Ok(Graph::Mixed(h))) => assert_eq!(h.node_count(), 0),
                // a DMG needs an observed node
                (DocumentKind::Dmg, Err(Error::InvalidQuery(_))) => {}
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_graph("a -- b\n  a -- a\n", DocumentKind::Mixed).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "self-loop on `a`".into()
            }
        );
        let err = parse_graph("a -> b\nb <-> a\n", DocumentKind::Mixed).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("selection s\n", DocumentKind::Mixed).unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_graph("a => b", DocumentKind::Dmg).unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 3,
                ..
            }
        ));
        let err = parse_graph("a -> 9b", DocumentKind::Dmg).unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 6,
                ..
            }
        ));
        let err = parse_graph("a -> b\nb <- a\n", DocumentKind::Dmg).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("a -- b", DocumentKind::Dmg).unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 3,
                ..
            }
        ));
        let err = parse_graph("node", DocumentKind::Dmg).unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 1,
                ..
            }
        ));
    }

    #[test]
    fn dmg_allows_parallel_edges_of_distinct_types() {
        let doc = parse_graph("a -> b\nb -> a\na <-> b\n", DocumentKind::Dmg).unwrap();
        let Graph::Dmg(c) = doc.to_graph().unwrap() else {
            panic!()
        };
        assert_eq!(c.graph.edge_count(), 3);
    }

    #[test]
    fn mixed_serialization_puts_tails_first() {
        let doc = parse_graph(
            "node z\nb <- a\nc <-> a\nc -- b\nd <- c\n",
            DocumentKind::Mixed,
        )
        .unwrap();
        let text = graph_to_text(&doc.to_graph().unwrap());
        assert_eq!(text, "node z\na -> b\na <-> c\nb -- c\nc -> d\n");
    }

    #[test]
    fn kind_inference() {
        assert_eq!(infer_kind("a -- b"), DocumentKind::Mixed);
        assert_eq!(infer_kind("selection s\na -> s"), DocumentKind::Dmg);
        assert_eq!(infer_kind("a -> b # a -- b"), DocumentKind::Dmg);
    }
}
