use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgError {
    /// Two objects were built over different vertex sets or dimensions.
    DimensionMismatch(String),
    /// A quiver description is inconsistent.
    InvalidQuiver(String),
    /// A denominator vanished after a substitution.
    DivisionByZero(String),
    /// A fraction cannot be expanded at infinity in the requested variable.
    NotExpandable(String),
    /// The operation is not defined for this input (e.g. a non-symmetric quiver).
    Unsupported(String),
    /// A result that must be polynomial kept a denominator.
    NonPolynomial(String),
}

impl fmt::Display for AlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgError::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            AlgError::InvalidQuiver(s) => write!(f, "invalid quiver: {s}"),
            AlgError::DivisionByZero(s) => write!(f, "division by zero: {s}"),
            AlgError::NotExpandable(s) => write!(f, "not expandable at infinity: {s}"),
            AlgError::Unsupported(s) => write!(f, "unsupported: {s}"),
            AlgError::NonPolynomial(s) => write!(f, "non-polynomial result: {s}"),
        }
    }
}
