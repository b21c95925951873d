use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Grassmannian Gr({k},{n}): need 1 <= k < n")]
    InvalidGrassmannian { k: usize, n: usize },
    #[error("truncation degree {trunc} is below the minimum {min} for Gr({k},{n})")]
    TruncationTooSmall { k: usize, n: usize, trunc: usize, min: usize },
    #[error("invalid partition {parts:?} for Gr({k},{n}): {reason}")]
    InvalidPartition { parts: Vec<i64>, k: usize, n: usize, reason: String },
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("invalid jump sequence {0:?}")]
    InvalidJumpSequence(Vec<usize>),
    #[error("Pieri index {i} out of range 1..={max}")]
    PieriIndex { i: usize, max: usize },
    #[error("q-degree {degree} exceeds truncation {trunc}")]
    DegreeOverflow { degree: usize, trunc: usize },
    #[error("products reach q-degree {trunc}; truncation too small to certify the table")]
    NotStabilized { trunc: usize },
    #[error("integer overflow during {0}")]
    ArithmeticOverflow(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
