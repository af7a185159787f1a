use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// A map handed to `cone` does not commute with the differentials.
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    /// A module presentation failed validation.
    #[error("invalid dg-module: {0}")]
    Invalid(String),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
