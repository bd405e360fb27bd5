use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("numeric overflow: first non-finite value at index {index}")]
    NumericOverflow { index: usize },

    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("unsupported root at zero: reduce the recurrence order")]
    UnsupportedRoot,

    #[error("ill-conditioned system (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },
}

impl LpError {
    /// True for failures of the arithmetic itself rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            LpError::NumericOverflow { .. }
                | LpError::NumericFailure(_)
                | LpError::IllConditioned { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, LpError>;
