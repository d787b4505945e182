use thiserror::Error;

use crate::fourweight::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector length {0} is outside 1..={max}", max = crate::gf2::MAX_LEN)]
    InvalidLength(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("position {0} listed more than once")]
    DuplicatePosition(usize),

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{what} exceeds capacity: {requested} > {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("code is not a subcode of the ambient code")]
    NotSubcode,

    #[error("coset is not closed under complementation: {0}")]
    NotComplementClosed(String),

    #[error("conditions not satisfied: {}", format_violations(.0))]
    ConditionsFailed(Vec<Violation>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown code id `{0}`")]
    UnknownId(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("refused: {0}")]
    Refused(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
