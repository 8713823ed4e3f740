use thiserror::Error;

use crate::codeset::CodeSet;
use crate::codeword::Codeword;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Capacity,
    Contract,
    NotFound,
    Parse,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid codeword: {0}")]
    InvalidCodeword(String),

    #[error("invalid distance threshold: {0}")]
    InvalidThreshold(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what}: n = {n} exceeds the exhaustive limit {limit}; {hint}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error(
        "sampling budget exhausted after {attempts} attempts: {orbits} of {target} orbits \
         collected ({accepted} accepted draws)"
    )]
    SamplingExhausted {
        partial: Box<CodeSet>,
        attempts: u64,
        accepted: u64,
        orbits: usize,
        target: usize,
    },

    #[error("precondition violated: {message} (witness {witness}, shift {shift})")]
    Contract {
        message: String,
        witness: Codeword,
        shift: usize,
    },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::LengthMismatch { .. }
            | Error::InvalidCodeword(_)
            | Error::InvalidThreshold(_)
            | Error::Domain(_) => ErrorKind::Domain,
            Error::Capacity { .. } | Error::SamplingExhausted { .. } => ErrorKind::Capacity,
            Error::Contract { .. } => ErrorKind::Contract,
            Error::NotFound(_) => ErrorKind::NotFound,
            Error::Parse { .. } => ErrorKind::Parse,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
