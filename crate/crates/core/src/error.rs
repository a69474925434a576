use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A configurable size limit was hit. `partial` describes what had been
    /// computed before giving up.
    #[error("{what} exceeds cap {limit} ({partial})")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        partial: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize, partial: impl Into<String>) -> Error {
        Error::CapExceeded {
            what,
            limit,
            partial: partial.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInput(msg.into())
    }
}
