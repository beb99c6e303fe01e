use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("object cap exceeded at step {step} ({objects} objects > cap {cap})")]
    ResourceCap { step: usize, objects: usize, cap: usize },

    #[error("crossing limit exceeded: {crossings} > {limit}")]
    CrossingLimit { crossings: usize, limit: usize },

    #[error("non-integral grading ({h2}/2, {q2}/2)")]
    NonIntegral { h2: i32, q2: i32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),

    #[error("truncation level {n} insufficient for the requested window; try {suggested}")]
    TruncationInsufficient { n: usize, suggested: usize },

    #[error("unsupported color: {0}")]
    UnsupportedColor(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
