use thiserror::Error;

/// Errors raised by the algebra engine and the procedures built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("exponent overflow while computing {context}")]
    DegreeOverflow { context: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("invalid ring description: {0}")]
    InvalidRing(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn overflow(context: impl Into<String>) -> Self {
        Error::DegreeOverflow {
            context: context.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
