use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("node {node}: importance {value} is outside (0, 1]")]
    Importance { node: NodeId, value: f64 },
    #[error("edge ({u}, {v}): weight {value} must be finite and non-negative")]
    EdgeWeight { u: NodeId, v: NodeId, value: f64 },
    #[error("edge endpoint {node} does not exist (graph has {node_count} nodes)")]
    DanglingEdge { node: NodeId, node_count: usize },
    #[error("{0}")]
    InvalidScheme(String),
    #[error("{}, line {line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("negative edge weight {weight} on ({u}, {v})")]
    NegativeWeight { u: NodeId, v: NodeId, weight: f64 },
    #[error("d_max must be positive, got {0}")]
    InvalidDmax(f64),
    #[error("not a 2-hop index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    Version(u32),
    #[error("index file is truncated")]
    Truncated,
    #[error("index file is corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error)]
pub enum TextError {
    #[error("keyword {0:?} contains no searchable characters")]
    EmptyPhrase(String),
    #[error("{}, line {line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("no node matches keyword {0:?}")]
    NoMatch(String),
    #[error("query has no keywords")]
    EmptyQuery,
    #[error("invalid query parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large for exhaustive search: {combinations} candidate combinations exceed {limit}")]
    TooLarge { combinations: f64, limit: f64 },
    #[error("no path between {0} and {1} within the index radius")]
    Disconnected(NodeId, NodeId),
    #[error("index was built for a graph with {index} nodes, graph has {graph}")]
    IndexMismatch { index: usize, graph: usize },
}
