//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rack: {0}")]
    InvalidRack(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("cocycle order is not finite")]
    InfiniteCocycleOrder,

    #[error("closure exceeded cap of {0} elements")]
    ClosureCap(usize),

    #[error("operation requires a complete algebra (build hit its limits)")]
    IncompleteAlgebra,

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
