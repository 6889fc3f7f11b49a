use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("monomial {0} is not in the coordinate basis")]
    NotInBasis(String),

    #[error("form does not have uniform rank")]
    NonUniformRank,

    #[error("form contains e^1, outside the domain of D")]
    ContainsFirstIndex,

    #[error("form is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },

    #[error("invalid algebra: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
