use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Internal` marks a violated mathematical invariant (an Ext cycle, a negative
/// multiplicity, a non-integral interpolation). Those are never expected on valid
/// input and indicate a bug rather than bad usage.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a cover of the degeneration order: {0}")]
    NotACover(String),

    #[error("not a degeneration: {0}")]
    NotADegeneration(String),

    #[error("size guard exceeded: {0}")]
    TooLarge(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotACover(_) => "not_a_cover",
            Error::NotADegeneration(_) => "not_a_degeneration",
            Error::TooLarge(_) => "too_large",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
pub(crate) use internal;
