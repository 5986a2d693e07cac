use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("denominator vanishes at u = 0")]
    PoleAtZero,
    #[error("degenerate affine substitution: p must be nonzero")]
    DegenerateSubstitution,
    #[error("degenerate change of variable: {0}")]
    DegenerateChange(String),
    #[error("malformed element: {0}")]
    MalformedElement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("rejected case: {0}")]
    RejectedCase(String),
    #[error("window too small to be conclusive: {0}")]
    InconclusiveWindow(String),
    #[error("dual-basis system is singular: {0}")]
    NotTransversal(String),
    #[error("constant part has the wrong kind for this family: {0}")]
    KindMismatch(String),
    #[error("cobracket is not polynomial: {0}")]
    NotPolynomial(String),
    #[error("parse error: {0}")]
    Parse(String),
}
