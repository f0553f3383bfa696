use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("alphabet has no track structure")]
    NoTracks,
    #[error("map does not fix the zero point: {0}")]
    NotZeroFixing(String),
    #[error("invalid word set: {0}")]
    InvalidWords(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
