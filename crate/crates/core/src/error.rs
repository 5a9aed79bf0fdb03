use thiserror::Error;

/// Errors raised by the library.
///
/// Precondition failures (bad input) and internal invariant violations are
/// kept apart so that front ends can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("prime {0} is too large for the residue field arithmetic (must fit in 63 bits)")]
    PrimeTooLarge(String),
    #[error("working precision must be at least 1")]
    BadPrecision,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    ConstantPolynomial,
    #[error("polynomial is not separable (zero discriminant)")]
    Inseparable,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial {0} is reducible over the base field")]
    Reducible(String),
    #[error("no finite point supplied")]
    NoFinitePoint,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid type data: {0}")]
    InvalidType(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the engine.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
pub(crate) use internal;
