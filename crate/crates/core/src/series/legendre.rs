//! Legendre polynomials on real and purely imaginary arguments.

use crate::error::{Error, Result};

/// P_n(x) by the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n − n P_{n−1}.
pub fn legendre_p(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("legendre_p argument"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Q_l(s) = (−i)^l P_l(i s), which is real for real `s`.
///
/// Substituting x = i s into the Legendre recurrence and multiplying through
/// by (−i)^{l+1} gives the all-real recurrence
/// (l+1) Q_{l+1} = (2l+1) s Q_l + l Q_{l−1}, with Q_0 = 1 and Q_1 = s.
/// Every coefficient is non-negative, so Q_l(s) > 0 for s > 0.
pub fn legendre_imag_realified(l: u32, s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::NonFinite("legendre_imag_realified argument"));
    }
    if l == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, s);
    for k in 1..l {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * s * cur + k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
