use thiserror::Error;

/// Errors produced by graph construction, queries and the text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid node name `{0}`")]
    InvalidName(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("self-loop on node `{0}`")]
    SelfLoop(String),

    #[error("duplicate edge {0}")]
    DuplicateEdge(String),

    #[error("more than one edge between `{0}` and `{1}`")]
    MultiEdge(String, String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// A quantity is undefined for the given arguments.
    #[error("undefined: {0}")]
    Domain(String),

    /// An operation was called on an input violating its precondition,
    /// e.g. a mixed graph that is not a σ-MAG.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph has {nodes} nodes, exceeding the oracle cap of {cap}")]
    OracleCap { nodes: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for errors that signal a violated precondition rather than bad input.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::OracleCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
