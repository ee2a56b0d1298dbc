use thiserror::Error;

/// Errors raised by norm construction and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A norm description is malformed or does not describe a norm.
    #[error("invalid norm spec: {0}")]
    Spec(String),

    /// An operation was called outside its domain (zero vector, bad parameter).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Degenerate geometry, e.g. parallel support lines when building a polar.
    #[error("degenerate geometry: {0}")]
    Geometry(String),

    /// `u + v` vanishes (within tolerance); the pair is outside the domain of
    /// the segment-infimum formulations.
    #[error("excluded pair: |u+v| = {0:e} is below the tolerance")]
    ExcludedPair(f64),

    /// A numerical routine failed in a way that only a broken evaluator can
    /// produce.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
