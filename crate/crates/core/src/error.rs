use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("invalid normalization: {0}")]
    InvalidNormalization(String),

    #[error("qubit index error: {0}")]
    Index(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
