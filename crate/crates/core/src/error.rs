use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {index} is empty")]
    EmptyEdge { index: usize },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("catalog entry `{name}` failed verification: {detail}")]
    CatalogMismatch { name: String, detail: String },

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),

    #[error("ragged matrix: line {line} has {found} columns, expected {expected}")]
    RaggedMatrix {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-binary character {ch:?} at line {line}, column {column}")]
    NonBinaryCharacter { line: usize, column: usize, ch: char },

    #[error("empty block at line {line}")]
    EmptyBlock { line: usize },

    #[error("invalid token {token:?} at line {line}")]
    InvalidToken { line: usize, token: String },

    #[error("malformed level dump: {0}")]
    MalformedDump(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
