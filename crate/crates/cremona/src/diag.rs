//! Location-bearing error for the line-oriented text formats.

use std::fmt;

/// A parse failure in a config or CSV document, pointing at the offending
/// spot. `line` and `col` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl FormatError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        FormatError { line, col, msg: msg.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for FormatError {}
