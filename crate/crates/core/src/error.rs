use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Exhausted search budgets inside the solvers are not errors; the solvers
/// report an undecided outcome instead. `Budget` is reserved for operations
/// that refuse to start because their enumeration space exceeds a hard cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("incompatible hypergraphs: ({n1}, {k1}) vs ({n2}, {k2})")]
    IncompatibleHypergraphs {
        n1: usize,
        k1: usize,
        n2: usize,
        k2: usize,
    },

    #[error("invalid construction spec: {0}")]
    InvalidSpec(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("no certificate: {0}")]
    NoCertificate(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("vertex capacity exceeded: {0} vertices requested, at most 64 supported")]
    Capacity(usize),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
