//! Scalar abstraction shared by the matrix machinery.
//!
//! All matrix code is generic over `Scalar`, so the same routines run over
//! exact rationals, dual numbers (for algorithmic differentiation, including
//! nested duals), and `f64` for flow integration.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rational_to_f64, Rational};

pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Multiplicative inverse when it exists.
    fn try_inv(&self) -> Option<Self>;
    /// Exact multiplication by 1/2.
    fn halve(&self) -> Self;
    /// Whether determinants should run through fraction-free elimination
    /// (exact division available and profitable) instead of cofactors.
    fn use_fraction_free_det() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn halve(&self) -> Self {
        self / Rational::from_integer(2.into())
    }
    fn use_fraction_free_det() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 || !self.is_finite() {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn halve(&self) -> Self {
        self * 0.5
    }
}
