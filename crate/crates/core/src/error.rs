use crate::bigraph::{EdgeId, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge #{position} ({x}, {y}) has an endpoint out of range (x_count={x_count}, y_count={y_count})")]
    EndpointOutOfRange {
        position: usize,
        x: usize,
        y: usize,
        x_count: usize,
        y_count: usize,
    },

    #[error("vertex {0} has odd degree {1}; no Eulerian circuit")]
    OddDegree(VertexId, usize),

    #[error("graph is not ({a},{b})-biregular: {detail}")]
    NotBiregular { a: usize, b: usize, detail: String },

    #[error("coloring leaves {} edge(s) uncolored: {:?}", .0.len(), .0)]
    PartialColoring(Vec<EdgeId>),

    #[error("coloring is not proper at {vertex}: color {color} repeats")]
    ImproperColoring { vertex: VertexId, color: u32 },

    #[error("malformed factor: {0}")]
    MalformedFactor(String),

    #[error("not a proper path-factor: {0}")]
    InvalidFactor(String),

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("generator failed: {0}")]
    Generation(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
