//! Parity signal ⟨Π_b(φ)⟩ at the output of the interferometer.
//!
//! The signal is a Gaussian prefactor times a (k, k) mixed derivative of
//! exp(q(h, g)), divided by the state normalization. Everything is generic
//! over [`Real`], so the same code path yields the value (f64), the exact
//! φ-slope ([`DualScalar`]) and the curvature at φ = 0 ([`Dual2`]). The
//! coherent amplitude enters through complex linear coefficients, which keeps
//! θ ≠ 0 on the same path.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{
    jet_exp_quadratic, jet_mixed_derivative, Cx, Dual2, DualScalar, QuadraticForm, Real,
};
use crate::states::{mean_photon_number, normalization, Scenario, StateKind, StateSpec};

/// Tolerance on |⟨Π⟩| − 1 before a value is reported as out of range.
pub const PARITY_RANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityPoint {
    pub phi: f64,
    pub value: f64,
    pub slope: f64,
}

/// Which small-φ coefficient to use: the literal closed forms, or the
/// curvature of the exact signal at φ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    Literal,
    #[default]
    SeriesConsistent,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::SeriesConsistent => "series",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "literal" => Ok(Variant::Literal),
            "series" | "series_consistent" | "seriesconsistent" => Ok(Variant::SeriesConsistent),
            other => Err(Error::InvalidSpec(format!("unknown variant `{other}`"))),
        }
    }
}

fn c<S: Real>(x: f64) -> S {
    S::from_f64(x)
}

/// ⟨Π_b(φ)⟩ for an arbitrary scalar type.
fn parity_generic<S: Real>(scenario: &Scenario, phi: S) -> Result<S> {
    let spec = scenario.squeezed();
    let norm = normalization(spec)?;
    let r = spec.r();
    let (ch, sh, s2r) = (r.cosh(), r.sinh(), (2.0 * r).sinh());
    let nz = scenario.nz();
    let (zr, zi) = scenario.z();
    let re_z2 = zr * zr - zi * zi;

    let (sin, cos) = (phi.sin(), phi.cos());
    let sin2 = sin * sin;
    let sin_2phi = c::<S>(2.0) * sin * cos;
    let d = S::one() + sin2 * c(sh * sh);
    let two_d = c::<S>(2.0) * d;

    let exponent = (c::<S>(2.0 * nz) * (cos - S::one() - sin2 * c(sh * sh))
        - sin2 * c(s2r * re_z2))
        / two_d;
    let prefactor = exponent.exp() / d.sqrt();

    let ops = spec.ops() as usize;
    if ops == 0 {
        return Ok(prefactor);
    }

    let z = Cx::new(c::<S>(zr), c::<S>(zi));
    let zc = z.conj();
    let real = |x: S| Cx::real(x);
    let q = match spec.kind() {
        StateKind::Added => {
            let four_d = c::<S>(4.0) * d;
            QuadraticForm {
                cross: real(-c::<S>(ch * ch) * cos / d),
                lin_h: (z.scale_by(c::<S>(4.0 * ch * ch) * sin) + zc.scale_by(c::<S>(s2r) * sin_2phi))
                    .scale_by(S::one() / four_d),
                lin_g: (zc.scale_by(c::<S>(4.0 * ch * ch) * sin) + z.scale_by(c::<S>(s2r) * sin_2phi))
                    .scale_by(S::one() / four_d),
                sq_h: real(-c::<S>(s2r) * cos * cos / four_d),
                sq_g: real(-c::<S>(s2r) * cos * cos / four_d),
            }
        }
        StateKind::Subtracted => QuadraticForm {
            cross: real(-c::<S>(sh * sh) * cos / d),
            lin_g: -(z.scale_by(c::<S>(sh * sh) * sin_2phi) + zc.scale_by(c::<S>(s2r) * sin))
                .scale_by(S::one() / two_d),
            lin_h: -(zc.scale_by(c::<S>(sh * sh) * sin_2phi) + z.scale_by(c::<S>(s2r) * sin))
                .scale_by(S::one() / two_d),
            sq_h: real(-c::<S>(sh * ch) / two_d),
            sq_g: real(-c::<S>(sh * ch) / two_d),
        },
        StateKind::Plain => unreachable!("plain state has ops = 0"),
    };
    let jet = jet_exp_quadratic(&q, ops, ops)?;
    let deriv = jet_mixed_derivative(&jet, ops, ops)?;
    Ok(prefactor * deriv.re / c::<S>(norm))
}

fn check_phi(phi: f64) -> Result<()> {
    if phi.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("phase shift"))
    }
}

fn check_range(value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite("parity expectation"));
    }
    if value.abs() > 1.0 + PARITY_RANGE_TOLERANCE {
        return Err(Error::ParityOutOfRange(value));
    }
    Ok(value)
}

/// ⟨Π_b(φ)⟩ in [−1, 1].
pub fn parity_expectation(scenario: &Scenario, phi: f64) -> Result<f64> {
    check_phi(phi)?;
    check_range(parity_generic(scenario, phi)?)
}

/// Value and exact slope d⟨Π⟩/dφ in one forward-mode pass.
pub fn parity_phase_slope(scenario: &Scenario, phi: f64) -> Result<ParityPoint> {
    check_phi(phi)?;
    let out = parity_generic(scenario, DualScalar::variable(phi))?;
    if !out.deriv.is_finite() {
        return Err(Error::NonFinite("parity slope"));
    }
    Ok(ParityPoint {
        phi,
        value: check_range(out.value)?,
        slope: out.deriv,
    })
}

/// d²⟨Π⟩/dφ² at `phi`.
pub fn parity_curvature(scenario: &Scenario, phi: f64) -> Result<f64> {
    check_phi(phi)?;
    let out = parity_generic(scenario, Dual2::variable(phi))?;
    check_range(out.value)?;
    Ok(out.d2)
}

/// Λ in ⟨Π(φ)⟩ ≈ σ(1 − Λφ²), σ = (−1)^ops.
pub fn small_phi_parity_coeff(scenario: &Scenario, variant: Variant) -> Result<f64> {
    let spec = scenario.squeezed();
    match variant {
        Variant::SeriesConsistent => {
            let sigma = spec.parity_sign();
            Ok(-sigma * 0.5 * parity_curvature(scenario, 0.0)?)
        }
        Variant::Literal => {
            let nbar = mean_photon_number(spec)?;
            let nz = scenario.nz();
            let radicand = literal_radicand(spec)?;
            Ok(nz * scenario.theta().cos() * radicand.sqrt() + (2.0 * nz * nbar + nz + nbar) / 2.0)
        }
    }
}

/// Radicand under nz·cosθ·√(·) in the literal small-φ expansions:
/// n̄² + n̄ + 1 (plain), n̄² + n̄ − 2 (one operation) and
/// n̄² + n̄ − item(n̄) (two operations).
pub fn literal_radicand(spec: &StateSpec) -> Result<f64> {
    let nbar = mean_photon_number(spec)?;
    let base = nbar * nbar + nbar;
    match (spec.kind(), spec.ops()) {
        (_, 0) => Ok(base + 1.0),
        (_, 1) => Ok(base - 2.0),
        (StateKind::Added, 2) => Ok(base - literal_item_added(nbar)),
        (StateKind::Subtracted, 2) => Ok(base - literal_item_subtracted(nbar)),
        (_, ops) => Err(Error::UnsupportedOps(ops)),
    }
}

/// 8(√(1+12n̄)+1)² / (3(√(1+12n̄)−1)²), the literal two-addition item.
pub fn literal_item_added(nbar: f64) -> f64 {
    let s = (1.0 + 12.0 * nbar).sqrt();
    8.0 * (s + 1.0).powi(2) / (3.0 * (s - 1.0).powi(2))
}

/// 8(√(1+12n̄)−1)² / (3(√(1+12n̄)+1)²), the literal two-subtraction item.
pub fn literal_item_subtracted(nbar: f64) -> f64 {
    let s = (1.0 + 12.0 * nbar).sqrt();
    8.0 * (s - 1.0).powi(2) / (3.0 * (s + 1.0).powi(2))
}

/// 24 cosh⁴r / (3cosh²r − 1)².
pub fn item_added_cosh(r: f64) -> f64 {
    let c2 = r.cosh().powi(2);
    24.0 * c2 * c2 / (3.0 * c2 - 1.0).powi(2)
}

/// 24 sinh⁴r / (3sinh²r + 1)².
pub fn item_subtracted_sinh(r: f64) -> f64 {
    let s2 = r.sinh().powi(2);
    24.0 * s2 * s2 / (3.0 * s2 + 1.0).powi(2)
}
