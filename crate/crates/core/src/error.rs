use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("illegal parameter combination: {0}")]
    IllegalCombination(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not in the expected subspace: {0}")]
    NotInSubspace(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
