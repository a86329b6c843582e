//! Entry types shared by the dense operator container.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;

/// Ring operations plus exact halving, which is all the map recursion needs.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Division by `2^k`.
    fn halve(&self, k: u32) -> Self;
    fn conj(&self) -> Self;
    fn from_dyadic(d: &Dyadic) -> Self;
}

impl Scalar for Dyadic {
    fn halve(&self, k: u32) -> Self {
        Dyadic::halve(self, k)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_dyadic(d: &Dyadic) -> Self {
        *d
    }
}

impl Scalar for f64 {
    fn halve(&self, k: u32) -> Self {
        self * (-(k as f64)).exp2()
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_f64()
    }
}

impl Scalar for Complex64 {
    fn halve(&self, k: u32) -> Self {
        let s = (-(k as f64)).exp2();
        Complex64::new(self.re * s, self.im * s)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_dyadic(d: &Dyadic) -> Self {
        Complex64::new(d.to_f64(), 0.0)
    }
}

impl Scalar for Ratio<i128> {
    fn halve(&self, k: u32) -> Self {
        self / Ratio::from_integer(1i128 << k)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_dyadic(d: &Dyadic) -> Self {
        d.to_ratio()
    }
}

/// Real scalars with a floating projection.
pub trait RealScalar: Scalar {
    fn to_f64(&self) -> f64;
}

impl RealScalar for Dyadic {
    fn to_f64(&self) -> f64 {
        Dyadic::to_f64(self)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl RealScalar for Ratio<i128> {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}
