//! Phase uncertainty by error propagation, its φ → 0 limit, the quantum Fisher
//! information, and the shot-noise / Heisenberg reference lines.

use std::fmt;

use crate::error::{Error, Result};
use crate::interferometry::{parity_phase_slope, small_phi_parity_coeff, Variant};
use crate::states::{mean_photon_number, second_moment_b2, Scenario};

/// Below this the slope counts as zero.
const SLOPE_EPS: f64 = 1e-14;
/// Below this 1 − ⟨Π⟩² counts as zero; √ of it is ~1e-7, the float floor of
/// the numerator when ⟨Π⟩ = ±1 up to rounding.
const VARIANCE_EPS: f64 = 1e-14;

/// Δφ, or the divergence marker where the signal slope vanishes at |⟨Π⟩| < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPhi {
    Finite(f64),
    Divergent,
}

impl DeltaPhi {
    /// The value, with +∞ for [`DeltaPhi::Divergent`].
    pub fn value(self) -> f64 {
        match self {
            DeltaPhi::Finite(v) => v,
            DeltaPhi::Divergent => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, DeltaPhi::Finite(_))
    }
}

impl fmt::Display for DeltaPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaPhi::Finite(v) => write!(f, "{v}"),
            DeltaPhi::Divergent => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityPoint {
    pub phi: f64,
    pub delta_phi: DeltaPhi,
    pub snl: f64,
    pub hl: f64,
    pub qfi: f64,
    pub crb: f64,
}

/// Δφ = √(1 − ⟨Π⟩²) / |∂⟨Π⟩/∂φ|.
///
/// Where both numerator and slope vanish (φ = 0 and its periodic images) the
/// ratio is 0/0 and [`Error::Indeterminate`] is returned; use
/// [`phase_uncertainty_zero_limit`] or a small offset there.
pub fn phase_uncertainty(scenario: &Scenario, phi: f64) -> Result<DeltaPhi> {
    let pt = parity_phase_slope(scenario, phi)?;
    let variance = ((1.0 - pt.value) * (1.0 + pt.value)).max(0.0);
    let slope = pt.slope.abs();
    if slope < SLOPE_EPS {
        return if variance <= VARIANCE_EPS {
            Err(Error::Indeterminate { phi })
        } else {
            Ok(DeltaPhi::Divergent)
        };
    }
    Ok(DeltaPhi::Finite(variance.sqrt() / slope))
}

/// lim φ→0 Δφ = 1/√(2Λ), with Λ the small-φ coefficient of the chosen variant.
pub fn phase_uncertainty_zero_limit(scenario: &Scenario, variant: Variant) -> Result<f64> {
    if scenario.theta() != 0.0 {
        return Err(Error::NonzeroTheta("the φ → 0 phase uncertainty"));
    }
    let lambda = small_phi_parity_coeff(scenario, variant)?;
    if lambda <= 0.0 {
        return Err(Error::NonPositive {
            what: "small-φ parity coefficient",
            value: lambda,
        });
    }
    Ok(1.0 / (2.0 * lambda).sqrt())
}

/// F_Q = 2 n̄_z n̄ + n̄_z + n̄ − 2 n̄_z ⟨b²⟩ for a real coherent amplitude.
pub fn quantum_fisher_information(scenario: &Scenario) -> Result<f64> {
    if scenario.theta() != 0.0 {
        return Err(Error::NonzeroTheta("the quantum Fisher information closed form"));
    }
    let spec = scenario.squeezed();
    let nbar = mean_photon_number(spec)?;
    let b2 = second_moment_b2(spec)?;
    let nz = scenario.nz();
    Ok(2.0 * nz * nbar + nz + nbar - 2.0 * nz * b2)
}

/// Δφ_min = 1/√F_Q.
pub fn cramer_rao_bound(qfi: f64) -> Result<f64> {
    if !qfi.is_finite() {
        return Err(Error::NonFinite("quantum Fisher information"));
    }
    if qfi <= 0.0 {
        return Err(Error::NonPositive {
            what: "quantum Fisher information",
            value: qfi,
        });
    }
    Ok(1.0 / qfi.sqrt())
}

/// (1/√N̄, 1/N̄).
pub fn classical_limits(total_nbar: f64) -> Result<(f64, f64)> {
    if !total_nbar.is_finite() {
        return Err(Error::NonFinite("total mean photon number"));
    }
    if total_nbar <= 0.0 {
        return Err(Error::NonPositive {
            what: "total mean photon number",
            value: total_nbar,
        });
    }
    Ok((1.0 / total_nbar.sqrt(), 1.0 / total_nbar))
}

/// N̄ = n̄_z + n̄ of the squeezed port.
pub fn total_nbar(scenario: &Scenario) -> Result<f64> {
    Ok(scenario.nz() + mean_photon_number(scenario.squeezed())?)
}

/// Everything a sweep row needs at one φ. At an indeterminate point the
/// φ → 0 limit of the given variant stands in for Δφ.
pub fn sensitivity_point(scenario: &Scenario, phi: f64, variant: Variant) -> Result<SensitivityPoint> {
    let delta_phi = match phase_uncertainty(scenario, phi) {
        Err(Error::Indeterminate { .. }) => {
            DeltaPhi::Finite(phase_uncertainty_zero_limit(scenario, variant)?)
        }
        other => other?,
    };
    let (snl, hl) = classical_limits(total_nbar(scenario)?)?;
    let qfi = quantum_fisher_information(scenario)?;
    Ok(SensitivityPoint {
        phi,
        delta_phi,
        snl,
        hl,
        qfi,
        crb: cramer_rao_bound(qfi)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{StateKind, StateSpec};

    fn scenario(kind: StateKind, ops: u32, r: f64, nz: f64) -> Scenario {
        Scenario::real(StateSpec::new(kind, ops, r).unwrap(), nz).unwrap()
    }

    #[test]
    fn limits_and_bound_examples() {
        assert_eq!(classical_limits(1.0).unwrap(), (1.0, 1.0));
        let (snl, hl) = classical_limits(100.0).unwrap();
        assert!((snl - 0.1).abs() < 1e-16 && (hl - 0.01).abs() < 1e-16);
        let (snl, hl) = classical_limits(32.0).unwrap();
        assert_eq!((snl, hl), (1.0 / 32f64.sqrt(), 1.0 / 32.0));
        assert!(classical_limits(0.0).is_err());
        assert_eq!(cramer_rao_bound(1.0).unwrap(), 1.0);
        assert_eq!(cramer_rao_bound(4.0).unwrap(), 0.5);
        assert!(cramer_rao_bound(0.0).is_err());
        assert!(cramer_rao_bound(-2.0).is_err());
    }

    #[test]
    fn qfi_examples() {
        let r = 0.8f64;
        let vac = scenario(StateKind::Plain, 0, r, 0.0);
        assert!((quantum_fisher_information(&vac).unwrap() - r.sinh().powi(2)).abs() < 1e-14);
        let nz = 5.0;
        let s = scenario(StateKind::Plain, 0, r, nz);
        let na = r.sinh().powi(2);
        let want = 2.0 * nz * na + nz + na + 2.0 * nz * r.sinh() * r.cosh();
        assert!((quantum_fisher_information(&s).unwrap() - want).abs() < 1e-12);

        let a = quantum_fisher_information(&scenario(StateKind::Added, 1, r, nz)).unwrap();
        let b = quantum_fisher_information(&scenario(StateKind::Subtracted, 1, r, nz)).unwrap();
        assert!((a - b).abs() < 1e-10 * a);

        let tilted = Scenario::new(StateSpec::plain(r).unwrap(), nz, 0.2).unwrap();
        assert!(matches!(
            quantum_fisher_information(&tilted),
            Err(Error::NonzeroTheta(_))
        ));
    }

    #[test]
    fn plain_near_zero_matches_literal_limit_only_loosely() {
        // n̄_a = n̄_z = 2: the literal k = 0 limit carries an extra +1 under the
        // inner root and so sits below the true near-zero Δφ.
        let r = 2f64.sqrt().asinh();
        let s = scenario(StateKind::Plain, 0, r, 2.0);
        let dphi = phase_uncertainty(&s, 1e-4).unwrap().value();
        let series = phase_uncertainty_zero_limit(&s, Variant::SeriesConsistent).unwrap();
        let literal = phase_uncertainty_zero_limit(&s, Variant::Literal).unwrap();
        assert!((dphi - series).abs() < 1e-4 * series);
        assert!((dphi - literal).abs() > 1e-2 * literal);
        let want = 1.0 / (2.0 * 2.0 * 7f64.sqrt() + 8.0 + 2.0 + 2.0).sqrt();
        assert!((literal - want).abs() < 1e-14);
    }

    #[test]
    fn extremum_gives_divergence() {
        // Plain squeezed vacuum with an empty coherent port: ⟨Π⟩ = 1/√(1 + sinh²r sin²φ)
        // has an interior minimum at φ = π/2.
        let s = scenario(StateKind::Plain, 0, 0.9, 0.0);
        let dphi = phase_uncertainty(&s, std::f64::consts::FRAC_PI_2).unwrap();
        assert_eq!(dphi, DeltaPhi::Divergent);
        assert_eq!(dphi.to_string(), "inf");
        assert_eq!(dphi.value(), f64::INFINITY);
    }

    #[test]
    fn zero_phase_is_indeterminate() {
        let s = scenario(StateKind::Added, 2, 0.3, 4.0);
        assert_eq!(phase_uncertainty(&s, 0.0), Err(Error::Indeterminate { phi: 0.0 }));
        let pt = sensitivity_point(&s, 0.0, Variant::SeriesConsistent).unwrap();
        let lim = phase_uncertainty_zero_limit(&s, Variant::SeriesConsistent).unwrap();
        assert_eq!(pt.delta_phi, DeltaPhi::Finite(lim));
        assert!((pt.crb - 1.0 / pt.qfi.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn crb_saturation_for_plain() {
        let s = scenario(StateKind::Plain, 0, 0.9, 100.0);
        let crb = cramer_rao_bound(quantum_fisher_information(&s).unwrap()).unwrap();
        let dphi = phase_uncertainty(&s, 1e-5).unwrap().value();
        assert!((dphi / crb - 1.0).abs() < 1e-3);
    }

    #[test]
    fn fisher_information_is_twice_the_curvature_coefficient() {
        for kind in [StateKind::Added, StateKind::Subtracted] {
            for ops in 0..=4 {
                let s = scenario(kind, ops, 0.6, 3.0);
                let f = quantum_fisher_information(&s).unwrap();
                let lambda = small_phi_parity_coeff(&s, Variant::SeriesConsistent).unwrap();
                assert!((f - 2.0 * lambda).abs() < 1e-9 * f, "{kind} {ops}");
            }
        }
    }
}
