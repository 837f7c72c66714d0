use thiserror::Error;

/// Errors raised by the algebra, generation and experiment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("zero polynomial: {0}")]
    ZeroPolynomial(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("resampling exhausted after {retries} retries: {reason}")]
    ResampleExhausted { retries: usize, reason: String },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("I/O error at record {index}: {msg}")]
    Io { index: u64, msg: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
