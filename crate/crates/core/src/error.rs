use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("probability {0} outside the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error("edge count {m} outside [0, {max}]")]
    EdgeCountOutOfRange { m: u64, max: u64 },

    #[error("invalid density {0:?}")]
    InvalidDensity(String),

    #[error("parameter domain violation: {0}")]
    Domain(String),

    #[error("graph on {n} vertices exceeds the limit of {limit} for this operation")]
    GraphTooLarge { n: usize, limit: usize },

    #[error("edge list, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
