use thiserror::Error;

use crate::diagram::EdgeId;

/// Errors raised anywhere in the certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("diagram is not connected")]
    NotConnected,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("edge {arc} does not belong to component {component}")]
    ArcNotOnComponent { arc: EdgeId, component: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
