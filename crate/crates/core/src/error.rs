use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("identical endpoints")]
    IdenticalEndpoints,
    #[error("non-separating cut")]
    NonSeparating,
    #[error("oracle limit exceeded: {vertices} vertices, limit {limit}")]
    OracleLimit { vertices: usize, limit: usize },
    #[error("already nested")]
    AlreadyNested,
    #[error("requires thin cuts")]
    NotThin,
    #[error("not an automorphism")]
    NotAutomorphism,
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("invalid strip: {0}")]
    InvalidStrip(String),
    #[error("separation level not stable up to width {0}")]
    Unstable(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
