use thiserror::Error;

use crate::monoid::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGround,

    #[error("ground set has {size} elements; at most {max} are supported")]
    TooLarge { size: usize, max: usize },

    #[error("label `{0}` is empty or contains whitespace")]
    BadLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("index {index} out of range for a ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("ground sets differ: [{left}] vs [{right}]")]
    GroundMismatch { left: String, right: String },

    #[error("order contains a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("relation is not a partial order ({0})")]
    NotPartialOrder(&'static str),

    #[error("relation is not a preorder ({0})")]
    NotPreorder(&'static str),

    #[error("relation {0} is not idempotent")]
    NotIdempotent(String),

    #[error("filter base must be non-empty")]
    EmptyFilter,

    #[error("{0}")]
    Unsupported(String),

    #[error("map is not isotone: {lo} <= {hi} but {lo_image} is not <= {hi_image}")]
    NonIsotone {
        lo: String,
        hi: String,
        lo_image: String,
        hi_image: String,
    },

    #[error("map does not transfer the realization table at ({strategy}, {state}): expected {expected}, found {found}")]
    TableMismatch {
        strategy: String,
        state: String,
        expected: String,
        found: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a closed submonoid: {0}")]
    NotClosed(Violation),

    #[error("{what} limit exceeded ({limit})")]
    Limit { what: &'static str, limit: usize },
}
