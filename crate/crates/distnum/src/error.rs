use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group too large: closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree {degree} exceeds the maximum supported degree {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("point set is not invariant under the group")]
    NotInvariant,
    #[error("element set is not closed under composition and inverse")]
    NotAGroup,
    #[error("not a subgroup of the given parent group")]
    NotASubgroup,
    #[error("invalid quotient pairing: {0}")]
    InvalidPairing(String),
    #[error("labeling infeasible: {0}")]
    Infeasible(String),
    #[error("search budget exceeded after {0} ms")]
    BudgetExceeded(u128),
    #[error("orbit of size {size} outside the {{1, 2, n, 2n}} family")]
    LargeOrbit { size: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown builder name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
