//! Exact-arithmetic verification toolkit for cross-sections of the adjoint
//! quotient of GL(n), the nested characteristic-polynomial parametrization of
//! its Borel subgroup, and the multiplicative Gelfand-Zetlin family on the
//! Poisson dual group.
//!
//! Everything algebraic runs over arbitrary-precision rationals, so the
//! identities checked here hold exactly or fail loudly; floating point
//! appears only in the Hamiltonian flow integrator.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod gzparam;
pub mod poisson;
pub mod roots;
pub mod sample;
pub mod steinberg;

pub use error::{Error, Result};
