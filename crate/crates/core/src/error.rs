use thiserror::Error;

/// Everything that can go wrong inside the calculus.
///
/// Variants fall into three classes (see [`ErrorClass`]): malformed or
/// out-of-range input, results that are undefined because no credence or
/// probability mass is left to work with, and evidences that live on
/// different partitions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PdError {
    #[error("probability {value} at index {index} is negative")]
    NegativeProb { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    SumViolation { sum: f64 },

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    Range {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("credence {value} is negative where only non-negative credence is allowed")]
    NegativeCredence { value: f64 },

    #[error("{what} is not a finite number")]
    NonFinite { what: &'static str },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("total credence is zero, merged probability is undefined")]
    ZeroTotalCredence,

    #[error("degenerate result: {0}")]
    Degenerate(&'static str),

    #[error("cannot condition on {what}: its probability {p} is zero")]
    ConditionOnNull { what: String, p: f64 },

    #[error("partition mismatch: {left:?} vs {right:?}")]
    PartitionMismatch { left: Vec<String>, right: Vec<String> },

    #[error("accord {value} leaves [0, 1] by more than rounding allows")]
    AccordOutOfRange { value: f64 },
}

/// Coarse classification used by front-ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Degenerate,
    PartitionMismatch,
}

impl PdError {
    pub fn class(&self) -> ErrorClass {
        match self {
            PdError::ZeroTotalCredence | PdError::Degenerate(_) | PdError::ConditionOnNull { .. } => {
                ErrorClass::Degenerate
            }
            PdError::PartitionMismatch { .. } => ErrorClass::PartitionMismatch,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, PdError>;
