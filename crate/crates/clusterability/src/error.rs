use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, solving, model I/O and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),

    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),

    #[error("edge sign must be 1 or -1, got {0}")]
    BadSign(i64),

    #[error("node label must be a nonempty string")]
    EmptyLabel,

    #[error("node `{node}` has no `{attribute}` attribute")]
    MissingAttribute { node: String, attribute: String },

    #[error("unknown attribute `{0}` (only `party` partitions nodes)")]
    UnknownAttribute(String),

    #[error("`{0}` does not name a node of the graph")]
    UnknownNode(String),

    #[error("partition assigns {got} nodes but the graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("cluster index {index} out of range for {nodes} nodes")]
    BadClusterIndex { index: u64, nodes: usize },

    #[error("graph has {n} nodes, exhaustive enumeration is capped at {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("cluster count k={k} out of range 1..={n}")]
    BadK { k: usize, n: usize },

    #[error("warm-start partition uses {clusters} clusters but k={k}")]
    WarmStartTooWide { clusters: usize, k: usize },

    #[error("node {0} has {1} active cluster variables, expected exactly 1")]
    InconsistentAssignment(u32, usize),

    #[error("reported objective {reported} does not match recomputed frustration {recomputed}")]
    ObjectiveMismatch { reported: u64, recomputed: u64 },

    #[error("same-cluster indicators are not transitive: pair ({0}, {1}) joins a cluster it is not marked with")]
    TransitivityViolation(u32, u32),

    #[error("cannot parse solution line {line}: {reason}")]
    SolutionFormat { line: usize, reason: String },

    #[error("solution value {value} for `{name}` is not within 1e-6 of a binary value")]
    NonBinaryValue { name: String, value: f64 },

    #[error("{path}: {message}")]
    InvalidFile { path: PathBuf, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
