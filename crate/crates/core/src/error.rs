use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid type label `{0}`")]
    InvalidLabel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("computation did not terminate: {0}")]
    NonTermination(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
