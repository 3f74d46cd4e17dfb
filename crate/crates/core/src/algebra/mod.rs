//! Exact scalar and matrix arithmetic: rationals, dual numbers for
//! algorithmic differentiation, division-free determinants and
//! principal-minor-sum coefficients.

pub mod dual;
pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod triangle;

pub use dual::Dual;
pub use matrix::{brute_minor_sums, brute_principal_minor, cofactor_det, row_rank, Mat};
pub use rational::{
    format_rational, parse_rational, rat, rat_i64, rational_from_f64, rational_to_f64, Rational,
};
pub use scalar::Scalar;
pub use triangle::CharTriangle;
