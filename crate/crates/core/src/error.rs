//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The modulus of a matrix or net is not a prime number.
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    /// A digit lies outside `{0, ..., b-1}`.
    #[error("digit {digit} out of range for modulus {modulus}")]
    DigitOutOfRange { digit: u64, modulus: u64 },

    /// Incompatible shapes (matrix/vector products, mismatched row lengths, ...).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Reduction indices must be non-decreasing.
    #[error("reduction indices must be non-decreasing, got w[{position}] < w[{position} - 1]")]
    NonMonotoneIndices { position: usize },

    /// Column-type reductions require matrices derived from a digital sequence.
    #[error("generating matrices are not marked as derived from a digital sequence; pass force to override")]
    NotFromSequence,

    /// An exact enumeration would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A text or CSV input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
