use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulation toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A scenario, region, or plan field violates its invariant.
    #[error("invalid configuration: `{field}` {reason}")]
    Config { field: &'static str, reason: String },

    #[error("node id {id} out of range for graph with {node_count} nodes")]
    InvalidNode { id: usize, node_count: usize },

    /// The operation requires a connected graph.
    #[error("graph at snapshot {snapshot} is not connected")]
    Disconnected { snapshot: usize },

    /// A metric was requested on a timeline it does not apply to.
    #[error("metric not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("malformed trace file {path}: line {line}: {reason}")]
    TraceFormat {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
