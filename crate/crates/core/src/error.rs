use thiserror::Error;

/// Errors raised by the library. Domain rejections (a polynomial that is a
/// valid PMF but not a tournament) are *not* errors; see
/// [`crate::schemes::Conversion`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("polynomial has nonzero coefficient a_{index} beyond degree {max_degree}")]
    Degree { index: usize, max_degree: usize },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid tie groups: {0}")]
    TieGroups(String),

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(i64),

    #[error("invalid PMF: {0}")]
    InvalidPmf(String),

    #[error("enumeration of {n}^{t} tournaments exceeds the cap of {cap}; use a smaller n or t")]
    EnumerationCap { n: usize, t: usize, cap: u64 },

    #[error("bounding box did not stabilise after {rounds} inflation rounds; raise the round cap")]
    BoxInflation { rounds: usize },

    #[error("malformed scheme file: {0}")]
    SchemeFormat(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
