use thiserror::Error;

/// Errors produced by matrix, code, and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
    #[error("code length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("coordinate {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("removing the given coordinates would leave a zero-length code")]
    AllColumnsRemoved,
    #[error("the zero code has no nonzero codeword")]
    ZeroCode,
    #[error("(C1, C2) is not a CSS-T pair")]
    NotACssTPair,
    #[error("C2 is not degenerated on coordinate {0}")]
    NotDegenerate(usize),
    #[error("C2 is not a subcode of C1")]
    NotSubcode,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid search configuration: {0}")]
    Config(String),
}
