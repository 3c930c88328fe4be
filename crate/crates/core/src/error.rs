use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series or denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank parameter r = {r} out of range for (m, n) = ({m}, {n})")]
    RankOutOfRange { r: usize, m: usize, n: usize },
    #[error("matrix is not in the parabolic subgroup P({l},{r})")]
    NotInParabolic { l: usize, r: usize },
    #[error("singular Levi block")]
    SingularBlock,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("exponent tuple {0:?} is not dominant")]
    NonDominant(Vec<i64>),
    #[error("Satake parameters are not pairwise distinct")]
    NonRegularSatake,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("identity {identity} failed at X^{degree}: expected {expected}, got {actual}")]
    IdentityFailed {
        identity: String,
        degree: usize,
        expected: String,
        actual: String,
    },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
}
