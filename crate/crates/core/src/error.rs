//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors split into two families: validation errors (bad input, CLI exit
/// code 2) and internal consistency failures (a proved identity failed to
/// hold in exact arithmetic, CLI exit code 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("rank r = {0} is too small (r >= 2 required)")]
    RankTooSmall(usize),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("point has a non-integral coordinate")]
    NonIntegralPoint,
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("k = {k} out of range (must satisfy 1 <= k < r*d = {rd})")]
    KOutOfRange { k: usize, rd: usize },
    #[error("regime violation: k = {k} exceeds d = {d}")]
    RegimeViolation { k: usize, d: usize },
    #[error("basis is F_q-linearly dependent")]
    DependentBasis,
    #[error("u-model hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("rendering supports rank 3 only, got r = {0}")]
    UnsupportedRank(usize),
    #[error("invalid input: {0}")]
    Invalid(String),

    // Internal consistency failures. These signal a bug, not bad input.
    #[error("van der Put transform is not an integer: {0}")]
    NonIntegralTransform(String),
    #[error("negative local inner degree at {0}")]
    NegativeInnerDegree(String),
    #[error("divisibility failure in Moore quotient: {0}")]
    DivisibilityFailure(String),
}

impl Error {
    /// True for errors that indicate an internal consistency failure rather
    /// than invalid input. The CLI maps these to exit code 3.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralTransform(_)
                | Error::NegativeInnerDegree(_)
                | Error::DivisibilityFailure(_)
        )
    }
}
