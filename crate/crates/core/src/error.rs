use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(String, String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("invalid contraction part: {0}")]
    InvalidPart(String),
    #[error("not a graft: component {component} contains {terminals} terminal(s)")]
    NotAGraft { component: String, terminals: usize },
    #[error("`{0}` and `{1}` lie in different connected components")]
    CrossComponent(String, String),
    #[error("not a join: {0}")]
    NotAJoin(String),
    #[error("not a minimum join: {0}")]
    NotMinimumJoin(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("graph is not factorizable")]
    NotFactorizable,
    #[error("refusing to enumerate: {what} is {actual}, bound is {limit}")]
    BoundExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
