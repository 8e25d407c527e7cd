use thiserror::Error;

use crate::quandle::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The table is not a square array of in-range point indices.
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("table is not a quandle: {0}")]
    AxiomViolation(Violation),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range for size {size}")]
    PointOutOfRange { point: usize, size: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A backtracking search ran past its node budget without deciding.
    #[error("search exhausted after {budget} nodes")]
    SearchExhausted { budget: u64 },

    #[error("group closure exceeded the element cap of {cap}")]
    ElementCapExceeded { cap: usize },

    #[error("size {size} exceeds the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("quandle is not crossed: s_{x}({y}) = {y} but s_{y}({x}) != {x}")]
    NotCrossed { x: usize, y: usize },

    #[error("connected component {component:?} does not have exactly two points")]
    BadComponentSize { component: Vec<usize> },

    #[error("not a 2-cocycle: {0}")]
    NotACocycle(crate::constructions::CocycleViolation),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
