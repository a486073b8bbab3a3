use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two coordinates compare equal (1-based positions).
    #[error("tie between coordinates {0} and {1}")]
    Tie(usize, usize),
    #[error("coordinate {index} is not strictly inside (0,1)")]
    OutOfUnitInterval { index: usize },
    #[error("length error: {0}")]
    Length(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("kernel undecided on states {0} and {1}")]
    KernelUndecided(usize, usize),
    #[error("comparison matrix is not realizable: cyclic triple ({0}, {1}, {2})")]
    NonRealizable(usize, usize, usize),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("transfer rule undefined: {0}")]
    RuleDomain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("generator failure: coordinate {0} collided on every resample")]
    GeneratorFailure(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
