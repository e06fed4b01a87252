use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("triangulation is not regular")]
    NotRegular,
    #[error("{what} exceeds the configured cap of {limit}")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("parameters out of range: {0}")]
    Range(String),
    #[error("no classification template matched: {0}")]
    NoTemplate(String),
    #[error("formula and oracle disagree: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
