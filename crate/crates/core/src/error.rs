use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {edge} has invalid length {length} (must be positive and finite)")]
    InvalidLength { edge: usize, length: f64 },
    #[error("edge {edge} has endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("source set is empty")]
    EmptySourceSet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has non-unit edge lengths (edge {edge} has length {length})")]
    NonUnitLength { edge: usize, length: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
