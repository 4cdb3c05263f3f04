use thiserror::Error;

/// Errors raised by the arithmetic kernels and the certification pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mathematically invalid input supplied by the caller.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Polynomial or field text that does not match the grammar.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A case the implementation deliberately does not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal cross-check failed; the computation cannot be trusted.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    /// A randomized search ran out of attempts.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True when the error reflects bad caller input rather than an internal fault.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Parse(_) | Error::DivisionByZero | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
