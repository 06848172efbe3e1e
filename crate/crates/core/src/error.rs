use thiserror::Error;

use crate::graph::V;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("vertex {vertex} occurs {count} times on the walk")]
    AmbiguousEndpoint { vertex: V, count: usize },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("the vertex set S is empty")]
    EmptyS,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("cycle does not bound a face")]
    CycleNotFacial,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("pieces {0} and {1} overlap incorrectly: {2}")]
    OverlapViolation(usize, usize, String),
    #[error("pieces {0} and {1} share representative {2}")]
    SdrCollision(usize, usize, V),
    #[error("bad level range: {0}")]
    BadRange(String),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("limit experiment needs at least 4 levels, got {0}")]
    InsufficientLevels(usize),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("walk is not spanning: {0}")]
    NotSpanning(String),
}

pub type Result<T> = std::result::Result<T, Error>;
