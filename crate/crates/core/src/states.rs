//! The squeezed-port input state: plain squeezed vacuum S(r)|0⟩ and its
//! photon-added (b†^k) and photon-subtracted (b^l) variants.
//!
//! Normalizations are the Legendre closed forms
//! N_k = k! cosh^k r P_k(cosh r) and C_l = l! sinh^l r Q_l(sinh r), with
//! Q_l(s) = (−i)^l P_l(is). The generating-function route (mixed derivatives
//! of a Gaussian in two formal variables) is kept alongside as a cross-check
//! and is what the second moments ⟨b²⟩ are computed from.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{
    jet_exp_quadratic, jet_mixed_derivative, legendre_imag_realified, legendre_p, QuadraticForm,
};

/// Tail probability beyond the Fock cutoff that the amplitude vectors tolerate.
pub const FOCK_TAIL_TOLERANCE: f64 = 1e-12;

/// Which ladder operation is applied to the squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    Plain,
    Added,
    Subtracted,
}

impl StateKind {
    pub const ALL: [StateKind; 3] = [StateKind::Plain, StateKind::Added, StateKind::Subtracted];

    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Plain => "plain",
            StateKind::Added => "added",
            StateKind::Subtracted => "subtracted",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plain" | "svs" => Ok(StateKind::Plain),
            "added" | "pasvs" => Ok(StateKind::Added),
            "subtracted" | "pssvs" => Ok(StateKind::Subtracted),
            other => Err(Error::InvalidSpec(format!("unknown state kind `{other}`"))),
        }
    }
}

/// Squeezed-port state: kind, squeezing r ≥ 0, and number of ladder operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    kind: StateKind,
    r: f64,
    ops: u32,
}

impl StateSpec {
    pub fn new(kind: StateKind, ops: u32, r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite("squeezing parameter"));
        }
        if r < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "squeezing parameter must be non-negative, got {r}"
            )));
        }
        if kind == StateKind::Plain && ops != 0 {
            return Err(Error::InvalidSpec(format!(
                "plain squeezed vacuum takes no ladder operations, got {ops}"
            )));
        }
        Ok(Self { kind, r, ops })
    }

    pub fn plain(r: f64) -> Result<Self> {
        Self::new(StateKind::Plain, 0, r)
    }

    pub fn added(k: u32, r: f64) -> Result<Self> {
        Self::new(StateKind::Added, k, r)
    }

    pub fn subtracted(l: u32, r: f64) -> Result<Self> {
        Self::new(StateKind::Subtracted, l, r)
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn ops(&self) -> u32 {
        self.ops
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.kind, self.ops, r)
    }

    /// (−1)^ops: the parity of the state, since the squeezed vacuum is even.
    pub fn parity_sign(&self) -> f64 {
        if self.ops % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind == StateKind::Subtracted && self.ops > 0 && self.r == 0.0
    }

    pub(crate) fn ensure_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateState { ops: self.ops })
        } else {
            Ok(())
        }
    }
}

/// Full interferometer input: coherent state |z⟩ with |z|² = nz and phase θ,
/// together with the squeezed-port state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    squeezed: StateSpec,
    nz: f64,
    theta: f64,
}

impl Scenario {
    pub fn new(squeezed: StateSpec, nz: f64, theta: f64) -> Result<Self> {
        if !nz.is_finite() || !theta.is_finite() {
            return Err(Error::NonFinite("coherent amplitude"));
        }
        if nz < 0.0 {
            return Err(Error::InvalidSpec(format!(
                "coherent mean photon number must be non-negative, got {nz}"
            )));
        }
        Ok(Self {
            squeezed,
            nz,
            theta,
        })
    }

    /// θ = 0 scenario, the convention all closed forms assume.
    pub fn real(squeezed: StateSpec, nz: f64) -> Result<Self> {
        Self::new(squeezed, nz, 0.0)
    }

    pub fn squeezed(&self) -> &StateSpec {
        &self.squeezed
    }

    pub fn nz(&self) -> f64 {
        self.nz
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// z = sqrt(nz)·e^{iθ} as (re, im).
    pub fn z(&self) -> (f64, f64) {
        let mag = self.nz.sqrt();
        (mag * self.theta.cos(), mag * self.theta.sin())
    }
}

/// Gaussian exponent of the normalization generating function:
/// −(sinh 2r / 4)(t² + τ²) + tτ·cosh²r for addition, tτ·sinh²r for subtraction.
pub fn generating_exponent(spec: &StateSpec) -> QuadraticForm<f64> {
    let r = spec.r;
    let cross = match spec.kind {
        StateKind::Subtracted => r.sinh().powi(2),
        StateKind::Plain | StateKind::Added => r.cosh().powi(2),
    };
    QuadraticForm::symmetric(-(2.0 * r).sinh() / 4.0, cross)
}

/// N_k, C_l, or 1 for the plain squeezed vacuum.
pub fn normalization(spec: &StateSpec) -> Result<f64> {
    spec.ensure_nondegenerate()?;
    let ops = spec.ops;
    let fact = crate::series::factorial(ops as usize);
    match spec.kind {
        StateKind::Plain => Ok(1.0),
        StateKind::Added => {
            let c = spec.r.cosh();
            Ok(fact * c.powi(ops as i32) * legendre_p(ops, c)?)
        }
        StateKind::Subtracted => {
            let s = spec.r.sinh();
            Ok(fact * s.powi(ops as i32) * legendre_imag_realified(ops, s)?)
        }
    }
}

/// Normalization by the generating-function route: the (ops, ops) mixed
/// derivative of exp of [`generating_exponent`].
pub fn normalization_from_generating_function(spec: &StateSpec) -> Result<f64> {
    spec.ensure_nondegenerate()?;
    let n = spec.ops as usize;
    let jet = jet_exp_quadratic(&generating_exponent(spec), n, n)?;
    jet_mixed_derivative(&jet, n, n)
}

/// ⟨b†b⟩ in the normalized state.
pub fn mean_photon_number(spec: &StateSpec) -> Result<f64> {
    spec.ensure_nondegenerate()?;
    let r = spec.r;
    let ops = spec.ops;
    match spec.kind {
        StateKind::Plain => Ok(r.sinh().powi(2)),
        StateKind::Added => {
            // N_{k+1}/N_k = (k+1) cosh r P_{k+1}(cosh r) / P_k(cosh r)
            let c = r.cosh();
            Ok(f64::from(ops + 1) * c * legendre_p(ops + 1, c)? / legendre_p(ops, c)? - 1.0)
        }
        StateKind::Subtracted => {
            let s = r.sinh();
            let ratio = legendre_imag_realified(ops + 1, s)? / legendre_imag_realified(ops, s)?;
            Ok(f64::from(ops + 1) * s * ratio)
        }
    }
}

/// ⟨b²⟩ for real squeezing: the (ops+2, ops) mixed derivative of the
/// generating function divided by the normalization.
pub fn second_moment_b2(spec: &StateSpec) -> Result<f64> {
    spec.ensure_nondegenerate()?;
    if spec.kind == StateKind::Plain {
        return Ok(-spec.r.sinh() * spec.r.cosh());
    }
    let n = spec.ops as usize;
    let jet = jet_exp_quadratic(&generating_exponent(spec), n + 2, n)?;
    Ok(jet_mixed_derivative(&jet, n + 2, n)? / normalization(spec)?)
}

/// Smallest mean photon number attainable for a kind and operation count
/// (an infimum for subtraction, where r = 0 itself is degenerate).
///
/// As r → 0: b†^k|0⟩ = √k!|k⟩ gives k; b^l S(r)|0⟩ is dominated by the lowest
/// surviving even component, which lands on |0⟩ for even l and |1⟩ for odd l.
pub fn attainable_minimum(kind: StateKind, ops: u32) -> f64 {
    match kind {
        StateKind::Plain => 0.0,
        StateKind::Added => f64::from(ops),
        StateKind::Subtracted => f64::from(ops % 2),
    }
}

/// The unique r ≥ 0 with mean_photon_number(kind, ops, r) = target, by bisection.
pub fn solve_r_for_nbar(kind: StateKind, ops: u32, target: f64) -> Result<f64> {
    if !target.is_finite() {
        return Err(Error::NonFinite("target mean photon number"));
    }
    // validates the kind/ops combination
    StateSpec::new(kind, ops, 0.0)?;
    let minimum = attainable_minimum(kind, ops);
    let open_at_zero = kind == StateKind::Subtracted && ops > 0;
    if target < minimum || (open_at_zero && target <= minimum) {
        return Err(Error::Unattainable { target, minimum });
    }
    if target == minimum {
        return Ok(0.0);
    }

    let nbar = |r: f64| mean_photon_number(&StateSpec::new(kind, ops, r)?);
    let mut hi = 1.0 + 2.0 * target.sqrt().asinh();
    while nbar(hi)? < target {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::Unattainable { target, minimum });
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if nbar(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// max(40, ceil(4n̄ + 10√n̄ + 20 + 2·ops)).
pub fn cutoff_rule(nbar: f64, ops: u32) -> usize {
    let est = 4.0 * nbar + 10.0 * nbar.sqrt() + 20.0 + 2.0 * f64::from(ops);
    (est.ceil() as usize).max(40)
}

/// Amplitudes of the unnormalized state b†^k S(r)|0⟩ or b^l S(r)|0⟩ for
/// n = 0..=len-1; their squared norm (untruncated) is the normalization.
fn raw_amplitudes(spec: &StateSpec, len: usize) -> Vec<f64> {
    let ops = spec.ops as usize;
    let svs_len = len + ops;
    let t = spec.r.tanh();
    let mut svs = vec![0.0; svs_len];
    svs[0] = (1.0 / spec.r.cosh()).sqrt();
    let mut n = 0;
    while n + 2 < svs_len {
        let ratio = ((n as f64 + 1.0) / (n as f64 + 2.0)).sqrt();
        svs[n + 2] = -t * ratio * svs[n];
        n += 2;
    }
    let mut amps = svs;
    for _ in 0..ops {
        amps = match spec.kind {
            StateKind::Added => {
                let mut out = vec![0.0; amps.len()];
                for n in 1..amps.len() {
                    out[n] = (n as f64).sqrt() * amps[n - 1];
                }
                out
            }
            StateKind::Subtracted => (0..amps.len() - 1)
                .map(|n| ((n + 1) as f64).sqrt() * amps[n + 1])
                .collect(),
            StateKind::Plain => unreachable!("plain state has no ladder operations"),
        };
    }
    amps.truncate(len);
    amps
}

/// Probability mass beyond `cutoff` in the normalized state.
pub fn fock_tail_mass(spec: &StateSpec, cutoff: usize) -> Result<f64> {
    let norm = normalization(spec)?;
    let kept: f64 = raw_amplitudes(spec, cutoff + 1).iter().map(|c| c * c).sum();
    Ok((1.0 - kept / norm).max(0.0))
}

/// Smallest cutoff ≥ [`cutoff_rule`] whose tail mass is below
/// [`FOCK_TAIL_TOLERANCE`].
pub fn required_cutoff(spec: &StateSpec) -> Result<usize> {
    let norm = normalization(spec)?;
    let start = cutoff_rule(mean_photon_number(spec)?, spec.ops);
    let mut len = 2 * start + 2;
    loop {
        let amps = raw_amplitudes(spec, len);
        let mut kept = 0.0;
        for (n, c) in amps.iter().enumerate() {
            kept += c * c;
            if n >= start && 1.0 - kept / norm < FOCK_TAIL_TOLERANCE {
                return Ok(n);
            }
        }
        if len > 1 << 22 {
            return Err(Error::Truncation {
                cutoff: len,
                required: len,
                tail: 1.0 - kept / norm,
            });
        }
        len *= 2;
    }
}

/// Smallest cutoff ≥ [`required_cutoff`] whose tail mass is below `tail`.
///
/// The tail is summed term by term from far out, so tolerances far below the
/// float resolution of 1 − kept (down to ~1e-300) are meaningful.
pub fn cutoff_for_tail(spec: &StateSpec, tail: f64) -> Result<usize> {
    let norm = normalization(spec)?;
    let start = required_cutoff(spec)?;
    let mut len = 2 * start + 2;
    loop {
        let amps = raw_amplitudes(spec, len);
        // suffix[n] = Σ_{m ≥ n} c_m²
        let mut suffix = vec![0.0; len + 1];
        for n in (0..len).rev() {
            suffix[n] = suffix[n + 1] + amps[n] * amps[n];
        }
        // odd or even entries vanish for some states, so look at the last two;
        // past them the terms fall off geometrically
        let last = (amps[len - 1] * amps[len - 1]).max(amps[len - 2] * amps[len - 2]);
        if last / norm < tail * 1e-6 {
            if let Some(n) = (start..len).find(|&n| suffix[n + 1] / norm < tail) {
                return Ok(n);
            }
        }
        if len > 1 << 22 {
            return Err(Error::Truncation {
                cutoff: len,
                required: len,
                tail: suffix[start + 1] / norm,
            });
        }
        len *= 2;
    }
}

/// Normalized Fock amplitudes c_0..=c_cutoff.
///
/// The global sign is fixed so that the lowest non-zero amplitude is positive;
/// with that convention b†S(r)|0⟩ and bS(r)|0⟩ give the same vector.
pub fn fock_amplitudes(spec: &StateSpec, cutoff: usize) -> Result<Vec<f64>> {
    let norm = normalization(spec)?;
    let mut amps = raw_amplitudes(spec, cutoff + 1);
    let kept: f64 = amps.iter().map(|c| c * c).sum();
    let tail = (1.0 - kept / norm).max(0.0);
    if tail > FOCK_TAIL_TOLERANCE {
        return Err(Error::Truncation {
            cutoff,
            required: required_cutoff(spec)?,
            tail,
        });
    }
    let sign = match amps.iter().find(|c| **c != 0.0) {
        Some(c) if *c < 0.0 => -1.0,
        _ => 1.0,
    };
    let scale = sign / kept.sqrt();
    amps.iter_mut().for_each(|c| *c *= scale);
    Ok(amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    /// Independent squared norm of b†^k S(r)|0⟩ from the explicit expansion
    /// c_{2n} = sech^{1/2} r (−tanh r / 2)^n √((2n)!) / n!.
    fn brute_norm_added(k: usize, r: f64, cutoff: usize) -> f64 {
        let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
        let mut total = 0.0;
        for n in 0..=cutoff / 2 {
            let c = (1.0 / r.cosh()).sqrt() * (-r.tanh() / 2.0).powi(n as i32)
                * fact(2 * n).sqrt()
                / fact(n);
            // b†^k |2n⟩ = sqrt((2n+k)!/(2n)!) |2n+k⟩
            let amp = c * (fact(2 * n + k) / fact(2 * n)).sqrt();
            total += amp * amp;
        }
        total
    }

    #[test]
    fn spec_validation() {
        assert!(StateSpec::plain(-0.1).is_err());
        assert!(StateSpec::new(StateKind::Plain, 2, 0.3).is_err());
        assert!(StateSpec::added(1, f64::NAN).is_err());
        assert!(Scenario::real(StateSpec::plain(0.1).unwrap(), -1.0).is_err());
        assert_eq!("PASVS".parse::<StateKind>().unwrap(), StateKind::Added);
    }

    #[test]
    fn normalization_examples() {
        for r in [0.0, 0.4, 1.7] {
            assert_eq!(normalization(&StateSpec::added(0, r).unwrap()).unwrap(), 1.0);
        }
        for k in 0..6u32 {
            let want: f64 = (1..=k).map(f64::from).product();
            let got = normalization(&StateSpec::added(k, 0.0).unwrap()).unwrap();
            assert!(rel(got, want) < 1e-15);
        }
        let n1 = normalization(&StateSpec::added(1, 0.3).unwrap()).unwrap();
        assert!(rel(n1, 0.3f64.cosh().powi(2)) < 1e-15);
        assert!(rel(n1, brute_norm_added(1, 0.3, 60)) < 1e-13);
    }

    #[test]
    fn degenerate_subtraction_is_an_error() {
        let spec = StateSpec::subtracted(2, 0.0).unwrap();
        assert_eq!(normalization(&spec), Err(Error::DegenerateState { ops: 2 }));
        assert!(mean_photon_number(&spec).is_err());
        assert!(second_moment_b2(&spec).is_err());
        assert!(fock_amplitudes(&spec, 50).is_err());
        // l = 0 at r = 0 is just the vacuum
        assert_eq!(normalization(&StateSpec::subtracted(0, 0.0).unwrap()), Ok(1.0));
    }

    #[test]
    fn closed_form_matches_generating_function() {
        for kind in [StateKind::Added, StateKind::Subtracted] {
            for ops in 0..=8 {
                for r in [0.1, 0.3, 0.9, 1.5] {
                    let spec = StateSpec::new(kind, ops, r).unwrap();
                    let a = normalization(&spec).unwrap();
                    let b = normalization_from_generating_function(&spec).unwrap();
                    assert!(rel(a, b) < 1e-10, "{kind} {ops} {r}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn jet_reproduces_n2() {
        let r = 0.3f64;
        let spec = StateSpec::added(2, r).unwrap();
        let c = r.cosh();
        let want = 2.0 * c * c * (3.0 * c * c - 1.0) / 2.0;
        assert!(rel(normalization_from_generating_function(&spec).unwrap(), want) < 1e-13);
    }

    #[test]
    fn mean_photon_number_examples() {
        for r in [0.0, 0.2, 1.1] {
            let got = mean_photon_number(&StateSpec::plain(r).unwrap()).unwrap();
            assert!((got - r.sinh().powi(2)).abs() < 1e-14);
        }
        assert!((mean_photon_number(&StateSpec::added(1, 0.0).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        let got = mean_photon_number(&StateSpec::added(1, 0.3).unwrap()).unwrap();
        let want = 3.0 * 0.3f64.sinh().powi(2) + 1.0;
        assert!((got - want).abs() < 1e-14);
        assert!((got - 1.27820).abs() < 1e-5);
    }

    #[test]
    fn second_moment_examples() {
        for r in [0.0, 0.25, 0.8] {
            let plain = second_moment_b2(&StateSpec::plain(r).unwrap()).unwrap();
            assert!((plain + r.sinh() * r.cosh()).abs() < 1e-15);
            let added = second_moment_b2(&StateSpec::added(1, r).unwrap()).unwrap();
            assert!((added + 3.0 * r.sinh() * r.cosh()).abs() < 1e-13);
            // ops = 0 through the jet route agrees with the plain closed form
            let a0 = second_moment_b2(&StateSpec::added(0, r).unwrap()).unwrap();
            assert!((a0 - plain).abs() < 1e-14);
        }
    }

    #[test]
    fn fock_amplitude_examples() {
        let vac = fock_amplitudes(&StateSpec::plain(0.0).unwrap(), 45).unwrap();
        assert_eq!(vac[0], 1.0);
        assert!(vac[1..].iter().all(|&c| c == 0.0));

        let two = fock_amplitudes(&StateSpec::added(2, 0.0).unwrap(), 45).unwrap();
        assert!((two[2] - 1.0).abs() < 1e-15);
        assert_eq!(two.iter().filter(|c| **c != 0.0).count(), 1);

        let r = 0.9f64;
        let spec = StateSpec::plain(r).unwrap();
        let cutoff = required_cutoff(&spec).unwrap();
        let amps = fock_amplitudes(&spec, cutoff).unwrap();
        let norm: f64 = amps.iter().map(|c| c * c).sum();
        let mean: f64 = amps.iter().enumerate().map(|(n, c)| n as f64 * c * c).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!((mean - r.sinh().powi(2)).abs() < 1e-10);
        assert!(amps.iter().skip(1).step_by(2).all(|&c| c == 0.0));
    }

    #[test]
    fn cutoff_60_is_too_small_for_r_09() {
        // The tail beyond n = 60 at r = 0.9 is ~2e-10, above the 1e-12 bound.
        let spec = StateSpec::plain(0.9).unwrap();
        match fock_amplitudes(&spec, 60) {
            Err(Error::Truncation { tail, required, .. }) => {
                assert!(tail > 1e-11 && tail < 1e-9, "tail = {tail}");
                assert!(required > 60);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn amplitude_moments_match_closed_forms() {
        for kind in [StateKind::Added, StateKind::Subtracted] {
            for ops in 0..=4 {
                for r in [0.2, 0.6, 1.2] {
                    let spec = StateSpec::new(kind, ops, r).unwrap();
                    let cutoff = required_cutoff(&spec).unwrap().max(80);
                    let c = fock_amplitudes(&spec, cutoff).unwrap();
                    let mean: f64 = c.iter().enumerate().map(|(n, a)| n as f64 * a * a).sum();
                    let b2: f64 = (2..c.len())
                        .map(|n| c[n - 2] * c[n] * ((n * (n - 1)) as f64).sqrt())
                        .sum();
                    let nbar = mean_photon_number(&spec).unwrap();
                    let m2 = second_moment_b2(&spec).unwrap();
                    assert!((mean - nbar).abs() < 1e-8, "{kind} {ops} {r}: {mean} vs {nbar}");
                    assert!((b2 - m2).abs() < 1e-8, "{kind} {ops} {r}: {b2} vs {m2}");
                }
            }
        }
    }

    #[test]
    fn solve_examples() {
        let r = solve_r_for_nbar(StateKind::Plain, 0, 4.0).unwrap();
        assert!((r - 2f64.asinh()).abs() < 1e-12);
        assert!((r - 1.44363).abs() < 1e-5);
        assert_eq!(solve_r_for_nbar(StateKind::Added, 1, 1.0).unwrap(), 0.0);
        let r = solve_r_for_nbar(StateKind::Subtracted, 2, 16.0).unwrap();
        let back = mean_photon_number(&StateSpec::subtracted(2, r).unwrap()).unwrap();
        assert!((back - 16.0).abs() < 1e-10);
    }

    #[test]
    fn solve_rejects_unattainable_targets() {
        assert_eq!(
            solve_r_for_nbar(StateKind::Added, 3, 2.5),
            Err(Error::Unattainable {
                target: 2.5,
                minimum: 3.0
            })
        );
        assert!(solve_r_for_nbar(StateKind::Subtracted, 1, 1.0).is_err());
        assert!(solve_r_for_nbar(StateKind::Subtracted, 1, 1.0 + 1e-6).is_ok());
        assert!(solve_r_for_nbar(StateKind::Plain, 0, -0.5).is_err());
    }

    #[test]
    fn subtraction_infimum_is_approached() {
        for ops in 1..=5u32 {
            let n = mean_photon_number(&StateSpec::subtracted(ops, 1e-4).unwrap()).unwrap();
            assert!((n - attainable_minimum(StateKind::Subtracted, ops)).abs() < 1e-6);
        }
    }

    #[test]
    fn cutoff_rule_values() {
        assert_eq!(cutoff_rule(0.0, 0), 40);
        assert_eq!(cutoff_rule(16.0, 0), 124);
        assert_eq!(cutoff_rule(16.0, 3), 130);
    }
}
