use thiserror::Error;

use crate::expr::SyntaxError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator indices must differ (got i = j = {0})")]
    EqualIndices(u32),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("integer overflow in coefficient arithmetic")]
    IntegerOverflow,

    #[error("even k unsupported (k = {0}); only odd ambient dimensions k >= 3 are handled")]
    UnsupportedDimension(u32),

    #[error("invalid space parameters: {0}")]
    InvalidSpec(String),

    #[error("at least two obstacles are required (m = {0})")]
    ObstacleCountTooSmall(u32),

    #[error("factor #{index} is not annihilated by the diagonal map")]
    NotAZeroDivisor { index: usize },

    #[error("theorem check failed: product of zero-divisors normalized to 0 for n={n}, m={m}, k={k}")]
    TheoremCheckFailed { n: u32, m: u32, k: u32 },

    #[error("candidate budget exceeded after {candidates} candidates (partial best length {best})")]
    BudgetExceeded { best: u32, candidates: u64 },

    #[error("bound kind mismatch: {0}")]
    KindMismatch(String),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}
