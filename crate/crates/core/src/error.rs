use thiserror::Error;

/// Errors raised while building or evaluating a complement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplementError {
    /// The image of `f` covers the whole universe, so no total `g` with a
    /// disjoint range exists.
    #[error("complement set is empty: f is onto its universe")]
    EmptyComplement,

    #[error("domain of {bits} bits holds {capacity} keys but {needed} values must be covered")]
    DomainTooSmall { bits: u32, capacity: u64, needed: u64 },

    #[error("key {key} is outside the {bits}-bit domain")]
    OutOfRange { key: u64, bits: u32 },

    #[error("interpolation node {0} appears more than once")]
    DuplicateNode(u64),

    #[error("search bound {bound} reached after producing {produced} values")]
    BoundExhausted {
        produced: usize,
        bound: u64,
        values: Vec<u64>,
    },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid value set: {0}")]
    InvalidValueSet(String),

    #[error("invalid mapping table: {0}")]
    InvalidMapping(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = ComplementError> = std::result::Result<T, E>;
