use alloc::string::String;
use core::fmt;

/// Errors shared by the lattice and map layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A class vector does not match the rank of the lattice it is used on.
    DimMismatch { expected: usize, got: usize },
    /// `cone_probe` was called with no curves to test against.
    EmptyCurveList,
    /// A fraction literal had denominator zero.
    ZeroDenominator { text: String },
    /// A class or fraction literal failed to parse.
    Parse { text: String, msg: String },
    /// Map data failed validation (shapes, ladder names, adjunction).
    InvalidMap { msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected} coordinates, got {got}")
            }
            Error::EmptyCurveList => write!(f, "empty curve list"),
            Error::ZeroDenominator { text } => {
                write!(f, "zero denominator in fraction `{text}`")
            }
            Error::Parse { text, msg } => write!(f, "cannot parse `{text}`: {msg}"),
            Error::InvalidMap { msg } => write!(f, "invalid map data: {msg}"),
        }
    }
}
