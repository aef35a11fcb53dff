use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric (defect {defect:e} exceeds tolerance)")]
    NotSymmetric { defect: f64 },
    #[error("matrix is not a rotation")]
    NotRotation,
    #[error("{value} is not an eigenvalue (characteristic residual {residual:e})")]
    NotAnEigenvalue { value: f64, residual: f64 },
    #[error("entries ({k},{l}) are symmetric; no Givens improvement direction")]
    NoImprovementDirection { k: usize, l: usize },
    #[error("invalid Givens indices ({k},{l}): require k > l, both < {dim}")]
    InvalidIndices { k: usize, l: usize, dim: usize },
    #[error("point/weight lists must have equal nonzero length ({p}, {q}, {w})")]
    LengthMismatch { p: usize, q: usize, w: usize },
    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
