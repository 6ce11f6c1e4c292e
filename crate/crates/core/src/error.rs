use thiserror::Error;

use crate::seminv::Diagnostic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u32, n: u8 },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u8, found: u8 },

    #[error("invalid rank {0}")]
    InvalidRank(u32),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid bracket expression: {0}")]
    Invalid(#[from] Diagnostic),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("polynomial cannot be collected into determinants")]
    NotCollectable,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
