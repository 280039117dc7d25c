//! Error type shared by every module in the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} cap exceeded: needed more than {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("element id {id} out of range for group of order {order}")]
    InvalidElementId { id: u32, order: usize },

    #[error("the given element set is not a subgroup")]
    NotASubgroup,

    #[error("the given subgroup is not normal")]
    NotNormal,

    #[error("seed subgroup does not normalize the target set")]
    SeedNotNormalizing,

    #[error("inversion of zero in GF({q})")]
    ZeroInversion { q: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("no table applies: {0}")]
    NoTable(String),

    #[error("computation timed out")]
    Timeout,

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
