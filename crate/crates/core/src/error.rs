use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("objects live over different rings")]
    RingMismatch,
    #[error("factorizations have different potentials")]
    PotentialMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("object is not w-flat; use the derived cokernel instead")]
    NotWFlat,
    #[error("potential is not certified as a nonzero-divisor")]
    ZeroDivisorPotential,
    #[error("operation requires graded input: {0}")]
    Ungraded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource bound exhausted: {0}")]
    Exhausted(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
