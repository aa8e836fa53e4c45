use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Arithmetic the simplex needs. Exact for `Rational`; `f64` compares
/// against a fixed tolerance and exists only for timing runs.
pub trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn less_than(&self, other: &Self) -> bool;
    fn from_rational(value: &Rational) -> Self;
    const EXACT: bool;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn less_than(&self, other: &Self) -> bool {
        self < other
    }
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }
    const EXACT: bool = true;
}

const TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        self.abs() <= TOLERANCE
    }
    fn is_positive(&self) -> bool {
        *self > TOLERANCE
    }
    fn is_negative(&self) -> bool {
        *self < -TOLERANCE
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn less_than(&self, other: &Self) -> bool {
        self < &(other - TOLERANCE)
    }
    fn from_rational(value: &Rational) -> Self {
        crate::rational::to_f64(value)
    }
    const EXACT: bool = false;
}
