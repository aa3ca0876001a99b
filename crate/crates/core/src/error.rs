use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(
        "inadmissible simple type {0}: admissible are A(n>=1), B(n>=2), C(n>=3), D(n>=4), E(6,7,8), F4, G2"
    )]
    InadmissibleType(String),
    #[error("root {0:?} is not a positive root of the system")]
    NotPositiveRoot(Vec<i64>),
    #[error("empty root system")]
    EmptySystem,
    #[error("variable mismatch: expected {expected} variables, got {got}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("size guard exceeded: {what} = {size} > {limit}")]
    GuardExceeded {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("outside oracle scope: {0}")]
    OutOfScope(String),
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("no generic sample point found after {0} retries")]
    DegenerateSample(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Internal consistency failure; signals a bug in an upstream stage or a
    /// contradicted structural claim.
    #[error("fatal: {0}")]
    Fatal(String),
}

impl Error {
    pub fn fatal(msg: impl Into<String>) -> Self {
        Error::Fatal(msg.into())
    }
}
