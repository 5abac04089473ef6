use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Checked 64-bit arithmetic overflowed; names the offending operation.
    Overflow { op: &'static str },
    /// A matrix is not a valid product of `M(a)` factors.
    InvalidMatrix(&'static str),
    /// Continued-fraction words must be nonempty with all digits >= 1.
    EmptyWord,
    ZeroDigit,
    /// A period that is an exact power of a shorter word.
    NonPrimitivePeriod,
    /// An internal consistency check failed (Pell identity, integrality, ...).
    InvariantViolation(&'static str),
    /// A floating-point cut lies too close to an integer trace threshold.
    BoundaryAmbiguity,
    BadArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow { op } => write!(f, "arithmetic overflow in {op}"),
            Error::InvalidMatrix(msg) => write!(f, "invalid matrix: {msg}"),
            Error::EmptyWord => write!(f, "continued-fraction word is empty"),
            Error::ZeroDigit => write!(f, "continued-fraction digit must be >= 1"),
            Error::NonPrimitivePeriod => write!(f, "period is a power of a shorter word"),
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            Error::BoundaryAmbiguity => {
                write!(f, "bound is within floating error of an integer threshold")
            }
            Error::BadArgument(msg) => write!(f, "bad argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
