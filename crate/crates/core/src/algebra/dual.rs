//! Dual numbers a + b*eps with eps^2 = 0, over any scalar.
//!
//! Evaluating a polynomial map on `Dual` inputs yields the exact directional
//! derivative in the eps part; nesting `Dual<Dual<_>>` gives exact second
//! directional derivatives, which the Poisson module uses for the Jacobi
//! identity check.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Dual<T> {
    pub value: T,
    pub derivative: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(value: T, derivative: T) -> Self {
        Dual { value, derivative }
    }

    pub fn constant(value: T) -> Self {
        Dual {
            value,
            derivative: T::zero(),
        }
    }

    /// value + 1*eps: the evaluation point of a single variable.
    pub fn variable(value: T) -> Self {
        Dual {
            value,
            derivative: T::one(),
        }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            value: self.value + rhs.value,
            derivative: self.derivative + rhs.derivative,
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            value: self.value - rhs.value,
            derivative: self.derivative - rhs.derivative,
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual {
            value: self.value.clone() * rhs.value.clone(),
            derivative: self.value * rhs.derivative + self.derivative * rhs.value,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            value: -self.value,
            derivative: -self.derivative,
        }
    }
}

impl<T: Scalar> Zero for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.derivative.is_zero()
    }
}

impl<T: Scalar> One for Dual<T> {
    fn one() -> Self {
        Dual::constant(T::one())
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_i64(v: i64) -> Self {
        Dual::constant(T::from_i64(v))
    }
    fn from_rational(r: &Rational) -> Self {
        Dual::constant(T::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        // 1/(a + b eps) = a^-1 - a^-2 b eps
        let vi = self.value.try_inv()?;
        let d = -(vi.clone() * self.derivative.clone() * vi.clone());
        Some(Dual {
            value: vi,
            derivative: d,
        })
    }
    fn halve(&self) -> Self {
        Dual {
            value: self.value.halve(),
            derivative: self.derivative.halve(),
        }
    }
}
