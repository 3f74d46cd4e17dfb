//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error("zero (or non-invertible) diagonal entry at position {0}")]
    ZeroDiagonal(usize),
    #[error("index {index} out of range (expected 1..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("sequence is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("index list must be strictly increasing within 1..={0}")]
    BadIndexList(usize),
    #[error("Levi subset equals the whole diagram; no compatible order exists")]
    LeviNotProper,
    #[error("invalid Levi subset: index {index} not in 1..={max}")]
    BadLeviSubset { index: usize, max: usize },
    #[error("chain must be strictly increasing and end at n")]
    BadChain,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("lower Borel matrix must be lower triangular with nonzero diagonal")]
    BadLowerBorel,
    #[error("coefficient datum at ({0},{0}) is zero; diagonal cannot be reconstructed")]
    ZeroDeterminantDatum(usize),
    #[error("point is not on H: diagonal entries at position {0} are not reciprocal")]
    DiagonalCondition(usize),
    #[error("matrix shape violation: {0}")]
    Shape(String),
    #[error("flow step size must be finite and non-negative")]
    BadStepSize,
    #[error("triangular inverse is numerically singular (|diagonal| < {0:e})")]
    NumericallySingular(f64),
    #[error("internal consistency violation: {0}")]
    Internal(String),
}
