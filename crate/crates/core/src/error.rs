use thiserror::Error;

/// Errors raised by the library.
///
/// Negative answers (no Euler family, no nice tree, ...) are never errors;
/// they come back as `None` or as an explicit outcome enum. An `Error` means
/// the input was malformed, a search cap was hit, or an internal invariant
/// broke.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {edge}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },

    #[error("edge {edge}: vertex {vertex} repeated")]
    RepeatedVertex { edge: usize, vertex: usize },

    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("threshold undefined for corank {corank}, rank {rank}")]
    UncoveredParameters { corank: usize, rank: usize },

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("ratio undefined: minimum {0}-degree is zero")]
    ZeroDegree(usize),

    #[error("S and T overlap at node {0}")]
    OverlappingSets(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("{node} has degree {degree}, cannot meet required degree {required}")]
    InfeasibleDegree {
        node: String,
        degree: usize,
        required: usize,
    },

    #[error("degree constraint violated: {0}")]
    DegreeSpec(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
