use thiserror::Error;

/// Errors shared across the numerical layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series failed to converge after {iterations} terms (argument {argument})")]
    SeriesDivergence { iterations: usize, argument: f64 },

    #[error("grid is not symmetric about the origin")]
    AsymmetricGrid,

    #[error("grid must be uniformly spaced for finite-difference operators")]
    NonUniformGrid,

    #[error("grid too coarse: estimated quadrature error {estimated:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimated: f64, tolerance: f64 },

    #[error("final time must be positive, got {0}")]
    DegenerateHorizon(f64),

    #[error("convolution quadrature failed at lambda = {lambda}: {reason}")]
    ConvolutionFailure { lambda: f64, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
