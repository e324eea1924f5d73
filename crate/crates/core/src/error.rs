use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid bipartite spec (n1={n1}, n2={n2}, k1={k1}, k2={k2}): {reason}")]
    InvalidSpec {
        n1: usize,
        n2: usize,
        k1: usize,
        k2: usize,
        reason: &'static str,
    },

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("unsupported coupling: jx ({jx}) must equal jy ({jy})")]
    UnsupportedCoupling { jx: f64, jy: f64 },

    #[error("no degeneracy to lift: {0}")]
    NoDegenerateLift(&'static str),

    #[error("{0}")]
    Validation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
