use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Scalar;

/// Complex number over an arbitrary real [`Scalar`], e.g. `Cx<DualScalar>`.
///
/// `num_complex::Complex` needs the full `num_traits::Num` tower, which the
/// dual types do not implement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn real(re: T) -> Self {
        Self::new(re, T::zero())
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn scale_by(self, k: T) -> Self {
        Self::new(self.re * k, self.im * k)
    }
}

impl<T: Scalar> Add for Cx<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Scalar> Sub for Cx<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Scalar> Mul for Cx<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl<T: Scalar> Div for Cx<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let den = rhs.re * rhs.re + rhs.im * rhs.im;
        let num = self * rhs.conj();
        Self::new(num.re / den, num.im / den)
    }
}

impl<T: Scalar> Neg for Cx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Scalar> Scalar for Cx<T> {
    fn from_f64(x: f64) -> Self {
        Self::real(T::from_f64(x))
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
