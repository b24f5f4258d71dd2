//! Shared error type.  Every fallible operation in the crate reports one of
//! these variants; panics are reserved for internal contract violations
//! (mixed fields, out-of-bounds indexing).

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes do not match the operation (non-square determinant,
    /// mismatched block sizes, wrong vector length).
    Shape(String),
    /// An operation required a square skew-symmetric input and got
    /// something else.
    NotSkewSymmetric,
    /// An operation required symmetric slices or a symmetric matrix.
    NotSymmetric,
    /// A matrix that had to be invertible was singular.
    Singular,
    /// Homogeneous-degree bookkeeping failed (adding forms of different
    /// degrees, non-exact polynomial division).
    DegreeMismatch { expected: usize, found: usize },
    /// A parameter is outside the documented range (parity, bounds).
    InvalidParameter(&'static str),
    /// A vector that had to be nonzero was zero.
    ZeroVector,
    /// Random sampling failed to reach a non-degenerate configuration
    /// within the retry cap.
    DegenerateAfterRetries { retries: u32, what: &'static str },
    /// The configured modulus is not an odd prime in the supported range.
    BadModulus(u64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::NotSkewSymmetric => write!(f, "matrix is not skew-symmetric"),
            Error::NotSymmetric => write!(f, "input is not symmetric"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::ZeroVector => write!(f, "vector must be nonzero"),
            Error::DegenerateAfterRetries { retries, what } => {
                write!(f, "still degenerate after {retries} retries: {what}")
            }
            Error::BadModulus(p) => write!(f, "modulus {p} is not an odd prime in range"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
