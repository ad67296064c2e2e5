use thiserror::Error;

/// Malformed graphs and out-of-range vertex references.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} appears in both sides of a join")]
    Overlap(usize),
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph needs at least {0} vertices")]
    TooSmall(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Errors surfaced by the analysis, reduction, and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured size or node limit would be exceeded.
    #[error("refused: {0}")]
    Refused(String),
    /// The forbidden graph lies on the single-exponential side of the dichotomy.
    #[error("not in scope: {0}")]
    NotInScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
