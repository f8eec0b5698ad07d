use thiserror::Error;

/// Errors produced by graph construction, linear algebra and group queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoopForbidden(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("graph must be connected")]
    RequiresConnected,
    #[error("graph must have at least {0} vertices")]
    TooSmall(usize),
    #[error("invalid pair: x and y must be distinct (got {0})")]
    InvalidPair(usize),
    #[error("configuration has degree {found}, expected {expected}")]
    DegreeMismatch { expected: String, found: String },
    #[error("wrong graph shape: {0}")]
    WrongShape(String),
    #[error("closed form undefined for k = {0}: k^2 - 4 must be nonzero")]
    DiscriminantDegenerate(u64),
    #[error("graph has {edges} edges, enumeration limit is {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
