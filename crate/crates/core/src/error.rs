use thiserror::Error;

use crate::terms::Term;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown generator {name:?} at byte {offset}")]
    UnknownGenerator { name: String, offset: usize },

    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),

    #[error("resource cap exceeded: {what} needs {requested}, cap is {cap}")]
    ResourceCap {
        what: String,
        requested: u128,
        cap: u128,
    },

    /// Two distinct basis elements with the same flattened word met in a
    /// star product.
    #[error("distinct basis elements {left:?} and {right:?} flatten to the same word")]
    FlattenCollision { left: Term, right: Term },

    #[error("rewrite depth limit {limit} exceeded; innermost steps:\n{}", trace.join("\n"))]
    DepthExceeded { limit: usize, trace: Vec<String> },

    #[error("expected a combination homogeneous of degree {expected}, found a term of size {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("malformed model: {0}")]
    Model(String),

    /// A model violates the Jacobi identity, the splitting conditions, or
    /// one of the defining identities.
    #[error("model check failed: {0}")]
    ModelCheck(String),

    #[error("generator {0:?} has no assigned vector")]
    UnassignedGenerator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
