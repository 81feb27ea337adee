//! Truncated bivariate power series.
//!
//! The parity signal and the state normalizations are all of the form
//! ∂^{k+l}/∂h^k ∂g^l exp(q(h, g)) at the origin, with q a quadratic without
//! constant term. Carrying the Taylor grid of exp(q) up to (k, l) gives those
//! derivatives exactly, for any coefficient type (plain, dual, complex).

use std::ops::{Add, Mul};

use super::Scalar;
use crate::error::{Error, Result};

/// q(h, g) = lin_h·h + lin_g·g + cross·hg + sq_h·h² + sq_g·g².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm<T> {
    pub lin_h: T,
    pub lin_g: T,
    pub cross: T,
    pub sq_h: T,
    pub sq_g: T,
}

impl<T: Scalar> QuadraticForm<T> {
    pub fn zero() -> Self {
        Self {
            lin_h: T::zero(),
            lin_g: T::zero(),
            cross: T::zero(),
            sq_h: T::zero(),
            sq_g: T::zero(),
        }
    }

    /// square·(h² + g²) + cross·hg, the shape of the state generating functions.
    pub fn symmetric(square: T, cross: T) -> Self {
        Self {
            cross,
            sq_h: square,
            sq_g: square,
            ..Self::zero()
        }
    }

    fn is_finite(&self) -> bool {
        [self.lin_h, self.lin_g, self.cross, self.sq_h, self.sq_g]
            .iter()
            .all(Scalar::is_finite)
    }
}

/// Dense coefficient grid c[i][j], 0 ≤ i ≤ order_h, 0 ≤ j ≤ order_g.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateJet<T> {
    order_h: usize,
    order_g: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> BivariateJet<T> {
    pub fn zero(order_h: usize, order_g: usize) -> Self {
        Self {
            order_h,
            order_g,
            coeffs: vec![T::zero(); (order_h + 1) * (order_g + 1)],
        }
    }

    pub fn constant(c: T, order_h: usize, order_g: usize) -> Self {
        let mut jet = Self::zero(order_h, order_g);
        jet.coeffs[0] = c;
        jet
    }

    /// The polynomial q itself, truncated to the grid.
    pub fn from_quadratic(q: &QuadraticForm<T>, order_h: usize, order_g: usize) -> Self {
        let mut jet = Self::zero(order_h, order_g);
        for (i, j, c) in [
            (1, 0, q.lin_h),
            (0, 1, q.lin_g),
            (1, 1, q.cross),
            (2, 0, q.sq_h),
            (0, 2, q.sq_g),
        ] {
            if i <= order_h && j <= order_g {
                jet.coeffs[i * (order_g + 1) + j] = c;
            }
        }
        jet
    }

    pub fn order_h(&self) -> usize {
        self.order_h
    }

    pub fn order_g(&self) -> usize {
        self.order_g
    }

    /// c[i][j]; zero outside the grid.
    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i > self.order_h || j > self.order_g {
            return T::zero();
        }
        self.coeffs[self.index(i, j)]
    }

    pub fn scale(&self, k: T) -> Self {
        Self {
            order_h: self.order_h,
            order_g: self.order_g,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.order_g + 1) + j
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!(
            (self.order_h, self.order_g),
            (other.order_h, other.order_g),
            "jet orders must agree"
        );
    }
}

impl<T: Scalar> Add for &BivariateJet<T> {
    type Output = BivariateJet<T>;

    fn add(self, rhs: Self) -> BivariateJet<T> {
        self.assert_same_shape(rhs);
        BivariateJet {
            order_h: self.order_h,
            order_g: self.order_g,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &BivariateJet<T> {
    type Output = BivariateJet<T>;

    /// Truncated Cauchy product.
    fn mul(self, rhs: Self) -> BivariateJet<T> {
        self.assert_same_shape(rhs);
        let (oh, og) = (self.order_h, self.order_g);
        let mut out = BivariateJet::zero(oh, og);
        for i in 0..=oh {
            for j in 0..=og {
                let a = self.coeffs[self.index(i, j)];
                for p in 0..=oh - i {
                    for q in 0..=og - j {
                        let idx = out.index(i + p, j + q);
                        out.coeffs[idx] = out.coeffs[idx] + a * rhs.coeffs[rhs.index(p, q)];
                    }
                }
            }
        }
        out
    }
}

/// Truncated expansion of exp(q(h, g)).
///
/// q has no constant term, so q^m only has monomials of total degree ≥ m and
/// the series Σ q^m / m! terminates exactly at m = order_h + order_g.
pub fn jet_exp_quadratic<T: Scalar>(
    q: &QuadraticForm<T>,
    order_h: usize,
    order_g: usize,
) -> Result<BivariateJet<T>> {
    if !q.is_finite() {
        return Err(Error::NonFinite("quadratic form coefficient"));
    }
    let poly = BivariateJet::from_quadratic(q, order_h, order_g);
    let mut sum = BivariateJet::constant(T::one(), order_h, order_g);
    let mut term = sum.clone();
    for m in 1..=order_h + order_g {
        term = (&term * &poly).scale(T::from_f64(1.0 / m as f64));
        sum = &sum + &term;
    }
    Ok(sum)
}

/// ∂^{k+l}/∂h^k ∂g^l of the represented series at the origin, i.e. k!·l!·c[k][l].
pub fn jet_mixed_derivative<T: Scalar>(jet: &BivariateJet<T>, k: usize, l: usize) -> Result<T> {
    if k > jet.order_h || l > jet.order_g {
        return Err(Error::JetOrder {
            k,
            l,
            order_h: jet.order_h,
            order_g: jet.order_g,
        });
    }
    Ok(jet.coeff(k, l).scale(factorial(k) * factorial(l)))
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}
