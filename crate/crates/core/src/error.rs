use std::path::PathBuf;

use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("query graph must have at least 2 vertices, got {0}")]
    QueryTooSmall(usize),

    #[error("query graph is disconnected")]
    DisconnectedQuery,

    #[error("invalid matching order: {0}")]
    InvalidOrder(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "CST cannot be split further at query vertex u{vertex}: size {size_bytes} B, max degree {max_degree}"
    )]
    Unsplittable {
        vertex: usize,
        size_bytes: usize,
        max_degree: usize,
    },

    #[error("CST max degree {max_degree} exceeds the kernel port limit {port_max}")]
    PortLimit { max_degree: usize, port_max: usize },

    #[error(
        "oracle refused instance with {query_vertices} query and {data_vertices} data vertices: beyond its enumeration limits"
    )]
    OracleGuard {
        query_vertices: usize,
        data_vertices: usize,
    },

    #[error("vertex {0} is out of range")]
    UnknownVertex(VertexId),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::QueryTooSmall(_) => "query_too_small",
            Error::DisconnectedQuery => "disconnected_query",
            Error::InvalidOrder(_) => "invalid_order",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Unsplittable { .. } => "unsplittable",
            Error::PortLimit { .. } => "port_limit",
            Error::OracleGuard { .. } => "oracle_guard",
            Error::UnknownVertex(_) => "unknown_vertex",
        }
    }
}
