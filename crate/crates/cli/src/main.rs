//! `cyclomag`: validate, abstract and compare graphs stored in the text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclomag::abstraction::{canonical_dmg, marginalize, represent, validate_edge_list};
use cyclomag::equivalence::{
    condition1, discriminating_paths, m_markov_equivalent_oracle, sigma_markov_equivalent_oracle,
    Clause, MarkovComparison, DEFAULT_EQUIVALENCE_ORACLE_CAP,
};
use cyclomag::io::{
    export_dot, graph_to_text, infer_kind, parse_edge_list, parse_graph, random_dmg, DocumentKind,
    GeneratorConfig, Graph, Item,
};
use cyclomag::separation::{
    inducing_paths, m_separated, sigma_inducing_paths, sigma_separated, SeparationQuery,
};
use cyclomag::{ContextedDmg, Error, MarkedGraph, MixedGraph};

#[derive(Parser)]
#[command(
    name = "cyclomag",
    version,
    about = "Sigma-MAG tools for cyclic directed mixed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a mixed graph is a sigma-MAG
    Validate { file: PathBuf },
    /// Print the sigma-MAG representing a DMG given its selection nodes
    Abstract { file: PathBuf },
    /// Marginalize nodes out of a DMG
    Marginalize {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<String>,
    },
    /// m-separation in a mixed graph
    Msep {
        file: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// sigma-separation in a DMG, conditioning on the selection nodes as well
    Ssep {
        file: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Print a DMG with selection nodes represented by a sigma-MAG
    Canonical { file: PathBuf },
    /// Markov equivalence of two graphs of the same kind
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Compare separation statements exhaustively instead of the structural test
        #[arg(long)]
        oracle: bool,
    },
    /// List inducing, sigma-inducing or discriminating paths
    Paths {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: PathKind,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Generate a seeded random DMG
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long = "p-dir")]
        p_dir: f64,
        #[arg(long = "p-bi")]
        p_bi: f64,
        #[arg(long, default_value_t = 0)]
        selection: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_selection_children: bool,
    },
    /// Graphviz output
    ExportDot { file: PathBuf },
}

#[derive(clap::Args)]
struct QueryArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    y: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    z: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKind {
    Inducing,
    SigmaInducing,
    Discriminating,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn in_file(path: &Path, err: Error) -> Self {
        let mut f = Failure::from(err);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Precondition(_) | Error::OracleCap { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn kind_of(path: &Path, text: &str) -> DocumentKind {
    match path.extension().and_then(|e| e.to_str()) {
        Some("dmg") => DocumentKind::Dmg,
        Some("mixed") => DocumentKind::Mixed,
        _ => infer_kind(text),
    }
}

fn load(path: &Path, kind: Option<DocumentKind>) -> std::result::Result<Graph, Failure> {
    let text = read(path)?;
    let kind = kind.unwrap_or_else(|| kind_of(path, &text));
    parse_graph(&text, kind)
        .and_then(|doc| doc.to_graph())
        .map_err(|e| Failure::in_file(path, e))
}

fn load_dmg(path: &Path) -> std::result::Result<ContextedDmg, Failure> {
    match load(path, Some(DocumentKind::Dmg))? {
        Graph::Dmg(c) => Ok(c),
        Graph::Mixed(_) => unreachable!(),
    }
}

fn load_mixed(path: &Path) -> std::result::Result<MixedGraph, Failure> {
    match load(path, Some(DocumentKind::Mixed))? {
        Graph::Mixed(h) => Ok(h),
        Graph::Dmg(_) => unreachable!(),
    }
}

fn oracle_cap(default: usize) -> std::result::Result<usize, Failure> {
    match std::env::var("CYCLOMAG_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("CYCLOMAG_ORACLE_CAP: not a count: `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn cmd_validate(path: &Path) -> Outcome {
    let text = read(path)?;
    let doc = parse_edge_list(&text).map_err(|e| Failure::in_file(path, e))?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for d in &doc.declarations {
        match &d.item {
            Item::Node(n) => nodes.push(n.as_str()),
            Item::Edge(a, ma, mb, b) => edges.push((
                a.as_str(),
                cyclomag::graph::node::edge_symbol(*ma, *mb),
                b.as_str(),
            )),
            Item::Selection(_) => unreachable!("rejected by the mixed parser"),
        }
    }
    let report = validate_edge_list(&nodes, &edges).map_err(|e| Failure::in_file(path, e))?;
    let mut out = format!("valid: {}\n", report.valid());
    for v in &report.violations {
        writeln!(out, "violation: {}", v.kind).unwrap();
        writeln!(out, "witness: {}", report.describe(&v.witness)).unwrap();
    }
    Ok(out)
}

fn cmd_marginalize(path: &Path, drop: &[String]) -> Outcome {
    let c = load_dmg(path)?;
    let w: BTreeSet<usize> = c.graph.indices_of(drop)?.into_iter().collect();
    let g = marginalize(&c.graph, &w)?;
    let sel: Vec<&str> = c
        .selection()
        .iter()
        .filter(|s| !w.contains(s))
        .map(|&s| c.graph.name(s))
        .collect();
    let c = ContextedDmg::with_selection_names(g, &sel)?;
    Ok(graph_to_text(&Graph::Dmg(c)))
}

fn verdict(separated: bool, witness: Option<String>) -> String {
    let mut out = format!("separated: {separated}\n");
    if let Some(w) = witness {
        writeln!(out, "witness: {w}").unwrap();
    }
    out
}

fn cmd_msep(path: &Path, q: &QueryArgs) -> Outcome {
    let h = load_mixed(path)?;
    let query = SeparationQuery::from_names(&h, &q.x, &q.y, &q.z)?;
    let v = m_separated(&h, &query)?;
    Ok(verdict(v.separated, v.witness.map(|w| w.display(&h))))
}

fn cmd_ssep(path: &Path, q: &QueryArgs) -> Outcome {
    let c = load_dmg(path)?;
    let mut query = SeparationQuery::from_names(&c.graph, &q.x, &q.y, &q.z)?;
    query.z.extend(c.selection().iter().copied());
    let v = sigma_separated(&c.graph, &query)?;
    Ok(verdict(v.separated, v.witness.map(|w| w.display(&c.graph))))
}

fn clause_name(c: Clause) -> &'static str {
    match c {
        Clause::Adjacency => "adjacency",
        Clause::UnshieldedCollider => "unshielded-collider",
        Clause::DiscriminatingPath => "discriminating-path",
    }
}

fn structural(h1: &MixedGraph, h2: &MixedGraph) -> Outcome {
    let r = condition1(h1, h2)?;
    let mut out = format!("equivalent: {}\n", r.equivalent);
    if let Some(c) = r.failed_clause {
        writeln!(out, "clause: {}", clause_name(c)).unwrap();
    }
    // witness indices are shared: both graphs have the same nodes
    if let Some(w) = r.describe_witness(h1) {
        writeln!(out, "witness: {w}").unwrap();
    }
    Ok(out)
}

fn comparison(m: MarkovComparison) -> String {
    let mut out = format!("equivalent: {}\n", m.equivalent);
    if let Some(cx) = m.counterexample {
        let z: Vec<&str> = cx.z.iter().map(|v| v.as_str()).collect();
        writeln!(
            out,
            "witness: {} and {} given {{{}}} are separated only in the {} graph",
            cx.a,
            cx.b,
            z.join(", "),
            if cx.separated_in_first {
                "first"
            } else {
                "second"
            }
        )
        .unwrap();
    }
    out
}

fn cmd_equiv(first: &Path, second: &Path, oracle: bool) -> Outcome {
    let g1 = load(first, None)?;
    let g2 = load(second, None)?;
    let cap = oracle_cap(DEFAULT_EQUIVALENCE_ORACLE_CAP)?;
    match (g1, g2) {
        (Graph::Mixed(h1), Graph::Mixed(h2)) if oracle => {
            Ok(comparison(m_markov_equivalent_oracle(&h1, &h2, cap)?))
        }
        (Graph::Mixed(h1), Graph::Mixed(h2)) => structural(&h1, &h2),
        (Graph::Dmg(c1), Graph::Dmg(c2)) if oracle => {
            Ok(comparison(sigma_markov_equivalent_oracle(&c1, &c2, cap)?))
        }
        (Graph::Dmg(c1), Graph::Dmg(c2)) => structural(&represent(&c1)?, &represent(&c2)?),
        _ => Err(Failure::usage("equiv needs two DMGs or two mixed graphs")),
    }
}

/// Pairs `a < b` to list paths for, restricted by the optional names.
fn pairs<G: MarkedGraph>(
    g: &G,
    candidates: &[usize],
    a: &Option<String>,
    b: &Option<String>,
) -> std::result::Result<Vec<(usize, usize)>, Failure> {
    let pick = |name: &Option<String>| -> std::result::Result<Option<usize>, Failure> {
        Ok(match name {
            Some(n) => Some(g.index_of(n)?),
            None => None,
        })
    };
    match (pick(a)?, pick(b)?) {
        (Some(x), Some(y)) => Ok(vec![(x, y)]),
        (Some(x), None) | (None, Some(x)) => Ok(candidates
            .iter()
            .filter(|&&y| y != x)
            .map(|&y| (x, y))
            .collect()),
        (None, None) => Ok(candidates
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| candidates[i + 1..].iter().map(move |&y| (x, y)))
            .collect()),
    }
}

fn cmd_paths(path: &Path, kind: PathKind, a: &Option<String>, b: &Option<String>) -> Outcome {
    let mut lines = Vec::new();
    match kind {
        PathKind::Inducing => {
            let h = load_mixed(path)?;
            let all: Vec<usize> = (0..h.node_count()).collect();
            for (x, y) in pairs(&h, &all, a, b)? {
                for p in inducing_paths(&h, x, y)? {
                    lines.push(p.display(&h));
                }
            }
        }
        PathKind::SigmaInducing => {
            let c = load_dmg(path)?;
            for (x, y) in pairs(&c.graph, &c.observed(), a, b)? {
                for p in sigma_inducing_paths(&c.graph, c.selection(), x, y)? {
                    lines.push(p.path.display(&c.graph));
                }
            }
        }
        PathKind::Discriminating => {
            let h = load_mixed(path)?;
            let first = a.as_deref().map(|n| h.index_of(n)).transpose()?;
            let target = b.as_deref().map(|n| h.index_of(n)).transpose()?;
            for p in discriminating_paths(&h, target) {
                if first.is_none_or(|f| f == p.a()) {
                    lines.push(format!("{} for {}", p.display(&h), h.name(p.target())));
                }
            }
        }
    }
    let mut out = format!("paths: {}\n", lines.len());
    for l in lines {
        writeln!(out, "path: {l}").unwrap();
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Abstract { file } => {
            let c = load_dmg(&file)?;
            Ok(graph_to_text(&Graph::Mixed(represent(&c)?)))
        }
        Command::Marginalize { file, drop } => cmd_marginalize(&file, &drop),
        Command::Msep { file, query } => cmd_msep(&file, &query),
        Command::Ssep { file, query } => cmd_ssep(&file, &query),
        Command::Canonical { file } => {
            let h = load_mixed(&file)?;
            Ok(graph_to_text(&Graph::Dmg(canonical_dmg(&h)?)))
        }
        Command::Equiv {
            first,
            second,
            oracle,
        } => cmd_equiv(&first, &second, oracle),
        Command::Paths { file, kind, a, b } => cmd_paths(&file, kind, &a, &b),
        Command::Random {
            nodes,
            p_dir,
            p_bi,
            selection,
            seed,
            allow_selection_children,
        } => {
            let cfg = GeneratorConfig {
                allow_selection_children,
                ..GeneratorConfig::new(nodes, p_dir, p_bi, selection, seed)
            };
            Ok(graph_to_text(&Graph::Dmg(random_dmg(&cfg)?)))
        }
        Command::ExportDot { file } => Ok(export_dot(&load(&file, None)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
