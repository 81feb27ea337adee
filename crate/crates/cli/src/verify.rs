//! Consistency suites: closed forms against the Fock oracle and against their
//! own structural properties, reported as JSON.

use std::fmt;
use std::str::FromStr;

use mzi_parity::fock_oracle::{
    build_input_state, j2_variance_oracle, oracle_cutoffs, parity_oracle, MziUnitary,
};
use mzi_parity::interferometry::{
    item_added_cosh, item_subtracted_sinh, literal_item_added, literal_item_subtracted,
    parity_expectation, small_phi_parity_coeff,
};
use mzi_parity::sensitivity::{phase_uncertainty, phase_uncertainty_zero_limit, quantum_fisher_information};
use mzi_parity::states::{mean_photon_number, normalization, second_moment_b2};
use mzi_parity::{Result as EngineResult, Scenario, StateKind, StateSpec, Variant};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::sweep::{with_pool, PARITY_TOLERANCE, QFI_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Quick => "quick",
            Suite::Full => "full",
        })
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            other => Err(CliError::Sweep(format!("unknown suite `{other}`"))),
        }
    }
}

/// Δφ·√F must land in 1 ± this at φ = [`CRB_PHI`].
pub const CRB_TOLERANCE: f64 = 1e-3;
pub const CRB_PHI: f64 = 1e-5;
pub const IDENTITY_TOLERANCE: f64 = 1e-10;
/// Allowed shrink factor of the quartic Taylor residual from φ = 1e-2 to 1e-3.
pub const TAYLOR_RATIO: (f64, f64) = (5e3, 2e4);
/// Mode-b cutoff floor for the oracle runs of the full suite.
pub const FULL_SUITE_CUTOFF: usize = 80;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub tolerance: String,
    pub points: usize,
    pub max_residual: f64,
    /// The grid point with the largest residual, or the first failing one.
    pub worst_point: String,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: &'static str,
    pub summary: String,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn finding(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }
}

/// Accumulates residuals for one check.
struct Tally {
    name: &'static str,
    tolerance: String,
    points: usize,
    max_residual: f64,
    worst_point: String,
    failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 20;

impl Tally {
    fn new(name: &'static str, tolerance: impl Into<String>) -> Self {
        Self {
            name,
            tolerance: tolerance.into(),
            points: 0,
            max_residual: 0.0,
            worst_point: String::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, point: String, residual: f64, ok: bool) {
        self.points += 1;
        if !ok && self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(format!("{point}: {residual:e}"));
        }
        // an evaluation error (NaN) stays the worst point once seen
        if self.max_residual.is_nan() {
            return;
        }
        if residual.is_nan() || residual > self.max_residual || self.worst_point.is_empty() {
            self.max_residual = residual;
            self.worst_point = point;
        }
    }

    fn error(&mut self, point: String, e: impl fmt::Display) {
        self.record(format!("{point} ({e})"), f64::NAN, false);
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.failures.is_empty() && self.points > 0,
            tolerance: self.tolerance,
            points: self.points,
            max_residual: self.max_residual,
            worst_point: self.worst_point,
            failures: self.failures,
        }
    }
}

struct Grid {
    ops: Vec<u32>,
    r: Vec<f64>,
    nz: Vec<f64>,
    crb_nz: Vec<f64>,
    phi: Vec<f64>,
    identity_r: Vec<f64>,
    min_cutoff: usize,
}

impl Grid {
    fn new(suite: Suite) -> Self {
        match suite {
            Suite::Quick => Self {
                ops: vec![1, 2],
                r: vec![0.3, 0.9],
                nz: vec![0.0, 4.0],
                crb_nz: vec![1.0, 16.0],
                phi: vec![0.0, 0.3, -1.0, 2.5],
                identity_r: (1..=8).map(|i| 0.25 * f64::from(i)).collect(),
                min_cutoff: 0,
            },
            Suite::Full => Self {
                ops: vec![1, 2, 3],
                r: vec![0.1, 0.3, 0.9],
                nz: vec![0.0, 1.0, 4.0],
                crb_nz: vec![1.0, 4.0, 16.0],
                phi: vec![0.0, 0.05, -0.05, 0.3, -0.3, 1.0, -1.0, 2.5, -2.5],
                identity_r: (1..=40).map(|i| 0.05 * f64::from(i)).collect(),
                min_cutoff: FULL_SUITE_CUTOFF,
            },
        }
    }

    /// Plain, then every added and subtracted count of the grid.
    fn specs(&self) -> Vec<(StateKind, u32)> {
        let mut v = vec![(StateKind::Plain, 0)];
        for kind in [StateKind::Added, StateKind::Subtracted] {
            v.extend(self.ops.iter().map(|&m| (kind, m)));
        }
        v
    }

    fn scenarios(&self, nzs: &[f64]) -> Vec<Scenario> {
        let mut out = Vec::new();
        for (kind, ops) in self.specs() {
            for &r in &self.r {
                for &nz in nzs {
                    let spec = StateSpec::new(kind, ops, r).expect("grid spec is valid");
                    out.push(Scenario::real(spec, nz).expect("grid scenario is valid"));
                }
            }
        }
        out
    }
}

fn label(s: &Scenario) -> String {
    let q = s.squeezed();
    format!("{} ops={} r={} nz={}", q.kind(), q.ops(), q.r(), s.nz())
}

pub type QfiFn<'a> = &'a (dyn Fn(&Scenario) -> EngineResult<f64> + Sync);

fn oracle_checks(grid: &Grid, qfi: QfiFn) -> (CheckResult, CheckResult) {
    let scenarios = grid.scenarios(&grid.nz);
    let cutoffs: Vec<EngineResult<(usize, usize)>> = scenarios
        .iter()
        .map(|s| {
            let (ca, cb) = oracle_cutoffs(s)?;
            Ok((ca, cb.max(grid.min_cutoff)))
        })
        .collect();
    let top = cutoffs.iter().flatten().map(|(a, b)| a + b).max().unwrap_or(0);
    let unitary = MziUnitary::new(0.0, top).expect("finite phase");

    type Outcome = EngineResult<(Vec<(f64, f64)>, f64, f64)>;
    let outcomes: Vec<Outcome> = scenarios
        .par_iter()
        .zip(&cutoffs)
        .map(|(s, cut)| {
            let (ca, cb) = cut.clone()?;
            let state = build_input_state(s, ca, cb)?;
            let mut parity = Vec::new();
            for &phi in &grid.phi {
                let oracle = parity_oracle(&unitary.with_phi(phi)?.apply(&state)?);
                parity.push((phi, (parity_expectation(s, phi)? - oracle).abs()));
            }
            let oracle_qfi = 4.0 * j2_variance_oracle(&state);
            let closed = qfi(s)?;
            Ok((parity, oracle_qfi, closed))
        })
        .collect();

    let mut par = Tally::new("oracle_equivalence", format!("|parity - oracle| <= {PARITY_TOLERANCE:e}"));
    let mut q = Tally::new("qfi_oracle", format!("|qfi - 4 var(J2)| <= {QFI_TOLERANCE:e}"));
    for (s, outcome) in scenarios.iter().zip(outcomes) {
        match outcome {
            Ok((parity, oracle_qfi, closed)) => {
                for (phi, d) in parity {
                    par.record(format!("{} phi={phi}", label(s)), d, d <= PARITY_TOLERANCE);
                }
                let d = (oracle_qfi - closed).abs();
                q.record(label(s), d, d <= QFI_TOLERANCE);
            }
            Err(e) => {
                par.error(label(s), &e);
                q.error(label(s), e);
            }
        }
    }
    (par.finish(), q.finish())
}

fn crb_saturation(grid: &Grid, qfi: QfiFn) -> CheckResult {
    let mut t = Tally::new(
        "crb_saturation",
        format!("delta_phi({CRB_PHI:e}) * sqrt(qfi) in [1 - {CRB_TOLERANCE:e}, 1 + {CRB_TOLERANCE:e}]"),
    );
    let scenarios = grid.scenarios(&grid.crb_nz);
    let results: Vec<EngineResult<f64>> = scenarios
        .par_iter()
        .map(|s| Ok(phase_uncertainty(s, CRB_PHI)?.value() * qfi(s)?.sqrt()))
        .collect();
    for (s, res) in scenarios.iter().zip(results) {
        match res {
            Ok(x) => {
                let d = (x - 1.0).abs();
                t.record(label(s), d, d <= CRB_TOLERANCE);
            }
            Err(e) => t.error(label(s), e),
        }
    }
    t.finish()
}

fn one_photon_identity(grid: &Grid, qfi: QfiFn) -> CheckResult {
    let mut t = Tally::new("one_photon_identity", format!("relative difference <= {IDENTITY_TOLERANCE:e}"));
    for &r in &grid.identity_r {
        let observables = |kind| -> EngineResult<Vec<f64>> {
            let spec = StateSpec::new(kind, 1, r)?;
            let s = Scenario::real(spec, 4.0)?;
            let mut v = vec![mean_photon_number(&spec)?, second_moment_b2(&spec)?, qfi(&s)?];
            for phi in [0.05, 0.7, 2.0] {
                v.push(parity_expectation(&s, phi)?);
                v.push(phase_uncertainty(&s, phi)?.value());
            }
            v.push(small_phi_parity_coeff(&s, Variant::SeriesConsistent)?);
            Ok(v)
        };
        match (observables(StateKind::Added), observables(StateKind::Subtracted)) {
            (Ok(a), Ok(b)) => {
                let d = a
                    .iter()
                    .zip(&b)
                    .map(|(x, y)| (x - y).abs() / x.abs().max(1.0))
                    .fold(0.0, f64::max);
                t.record(format!("r={r}"), d, d <= IDENTITY_TOLERANCE);
            }
            (Err(e), _) | (_, Err(e)) => t.error(format!("r={r}"), e),
        }
    }
    t.finish()
}

fn addition_dominance(grid: &Grid) -> CheckResult {
    let mut t = Tally::new("addition_dominance", "nbar(added, m) > nbar(subtracted, m) for m >= 2");
    for &r in &grid.identity_r {
        for m in 2..=6 {
            let point = format!("m={m} r={r}");
            let pair = StateSpec::added(m, r)
                .and_then(|a| mean_photon_number(&a))
                .and_then(|a| Ok((a, mean_photon_number(&StateSpec::subtracted(m, r)?)?)));
            match pair {
                // residual: how far subtraction is from overtaking, as a fraction
                Ok((a, s)) => t.record(point, (s / a).max(0.0), a > s),
                Err(e) => t.error(point, e),
            }
        }
    }
    t.finish()
}

fn taylor_residual() -> CheckResult {
    let (lo, hi) = TAYLOR_RATIO;
    let mut t = Tally::new("taylor_residual", format!("residual(1e-2)/residual(1e-3) in [{lo:e}, {hi:e}]"));
    for kind in [StateKind::Added, StateKind::Subtracted] {
        for ops in 0..=2 {
            for (r, nz) in [(0.3, 4.0), (0.9, 4.0), (0.3, 16.0)] {
                let point = format!("{kind} ops={ops} r={r} nz={nz}");
                let ratio = (|| -> EngineResult<f64> {
                    let s = Scenario::real(StateSpec::new(kind, ops, r)?, nz)?;
                    let sigma = s.squeezed().parity_sign();
                    let lambda = small_phi_parity_coeff(&s, Variant::SeriesConsistent)?;
                    let res = |phi: f64| -> EngineResult<f64> {
                        Ok((parity_expectation(&s, phi)? - sigma * (1.0 - lambda * phi * phi)).abs())
                    };
                    Ok(res(1e-2)? / res(1e-3)?)
                })();
                match ratio {
                    // residual: log10 distance from the centre of the band
                    Ok(x) => t.record(point, (x.log10() - 4.0).abs(), (lo..=hi).contains(&x)),
                    Err(e) => t.error(point, e),
                }
            }
        }
    }
    t.finish()
}

pub const RADICAL_SAMPLES: usize = 300;

fn radical_bounds() -> CheckResult {
    let mut t = Tally::new("radical_bounds", "8/3 <= added item <= 6 and 0 <= subtracted item <= 8/3");
    let lower = 8.0 / 3.0;
    for i in 0..RADICAL_SAMPLES {
        let r = 0.01 + (3.0 - 0.01) * i as f64 / (RADICAL_SAMPLES - 1) as f64;
        let point = format!("r={r}");
        match StateSpec::added(2, r).and_then(|s| mean_photon_number(&s)) {
            Ok(na) => {
                let item = literal_item_added(na);
                let excess = (lower - item).max(item - 6.0).max(0.0);
                t.record(point.clone(), excess, (lower..=6.0).contains(&item));
            }
            Err(e) => t.error(point.clone(), e),
        }
        let item = item_subtracted_sinh(r);
        let excess = (-item).max(item - lower).max(0.0);
        t.record(point, excess, (0.0..=lower).contains(&item));
    }
    t.finish()
}

/// Which variant's φ → 0 limit reproduces the Cramér–Rao bound for plain
/// squeezed vacuum.
fn k0_saturation_finding(grid: &Grid, qfi: QfiFn) -> Finding {
    let mut worst = [0.0f64; 2];
    let variants = [Variant::SeriesConsistent, Variant::Literal];
    let mut errors = Vec::new();
    for &r in &grid.r {
        for &nz in &grid.crb_nz {
            let s = StateSpec::plain(r).and_then(|p| Scenario::real(p, nz)).expect("plain grid scenario");
            for (i, v) in variants.iter().enumerate() {
                match (phase_uncertainty_zero_limit(&s, *v), qfi(&s)) {
                    (Ok(lim), Ok(f)) => worst[i] = worst[i].max((lim * f.sqrt() - 1.0).abs()),
                    (Err(e), _) | (_, Err(e)) => errors.push(format!("{v} r={r} nz={nz}: {e}")),
                }
            }
        }
    }
    let saturating: Vec<&str> = variants
        .iter()
        .zip(worst)
        .filter(|(_, w)| *w <= CRB_TOLERANCE)
        .map(|(v, _)| v.as_str())
        .collect();
    let summary = match saturating.as_slice() {
        ["series"] => format!(
            "at k = 0 only the series variant saturates the bound; the literal radicand n^2 + n + 1 misses it by up to {:.3}%",
            100.0 * worst[1]
        ),
        [] => "at k = 0 neither variant saturates the bound".to_string(),
        _ => format!("at k = 0 saturating variants: {}", saturating.join(", ")),
    };
    Finding {
        name: "k0_saturation",
        summary,
        details: serde_json::json!({
            "saturating_variants": saturating,
            "max_relative_deviation_series": worst[0],
            "max_relative_deviation_literal": worst[1],
            "tolerance": CRB_TOLERANCE,
            "errors": errors,
        }),
    }
}

/// The literal two-operation items, evaluated at the state's mean photon
/// number, against the cosh/sinh forms that the series variant reproduces.
fn two_operation_finding() -> Finding {
    let mut worst_added = 0.0f64;
    let mut worst_subtracted = 0.0f64;
    let mut worst_lambda = 0.0f64;
    for i in 0..RADICAL_SAMPLES {
        let r = 0.01 + (3.0 - 0.01) * i as f64 / (RADICAL_SAMPLES - 1) as f64;
        if let Ok(n) = StateSpec::added(2, r).and_then(|s| mean_photon_number(&s)) {
            worst_added = worst_added.max((literal_item_added(n) - item_added_cosh(r)).abs());
        }
        if let Ok(n) = StateSpec::subtracted(2, r).and_then(|s| mean_photon_number(&s)) {
            worst_subtracted = worst_subtracted.max((literal_item_subtracted(n) - item_subtracted_sinh(r)).abs());
        }
        if let Ok(s) = StateSpec::added(2, r).and_then(|p| Scenario::real(p, 4.0)) {
            if let (Ok(a), Ok(b)) = (
                small_phi_parity_coeff(&s, Variant::Literal),
                small_phi_parity_coeff(&s, Variant::SeriesConsistent),
            ) {
                worst_lambda = worst_lambda.max((a / b - 1.0).abs());
            }
        }
    }
    Finding {
        name: "two_operation_literal_items",
        summary: format!(
            "the literal k = 2 and l = 2 items evaluated at the mean photon number differ from the cosh/sinh forms by up to {worst_added:.3e} and {worst_subtracted:.3e}"
        ),
        details: serde_json::json!({
            "max_abs_difference_added": worst_added,
            "max_abs_difference_subtracted": worst_subtracted,
            "max_relative_lambda_difference_added_nz4": worst_lambda,
            "samples": RADICAL_SAMPLES,
        }),
    }
}

/// Normalization sanity used by the report header.
fn normalization_check(grid: &Grid) -> CheckResult {
    let mut t = Tally::new("normalization_positive", "finite, positive normalization");
    for (kind, ops) in grid.specs() {
        for &r in &grid.r {
            let point = format!("{kind} ops={ops} r={r}");
            match StateSpec::new(kind, ops, r).and_then(|s| normalization(&s)) {
                Ok(n) => t.record(point, 0.0, n.is_finite() && n > 0.0),
                Err(e) => t.error(point, e),
            }
        }
    }
    t.finish()
}

/// Runs a suite against the library's Fisher information.
pub fn verify_consistency(suite: Suite) -> Result<VerifyReport> {
    verify_consistency_with(suite, &quantum_fisher_information)
}

/// Runs a suite with `qfi` standing in for the Fisher-information closed form.
pub fn verify_consistency_with(suite: Suite, qfi: QfiFn) -> Result<VerifyReport> {
    let grid = Grid::new(suite);
    with_pool(|| {
        let (oracle, qfi_oracle) = oracle_checks(&grid, qfi);
        let checks = vec![
            normalization_check(&grid),
            oracle,
            qfi_oracle,
            crb_saturation(&grid, qfi),
            one_photon_identity(&grid, qfi),
            addition_dominance(&grid),
            taylor_residual(),
            radical_bounds(),
        ];
        let findings = vec![k0_saturation_finding(&grid, qfi), two_operation_finding()];
        VerifyReport {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
            findings,
        }
    })
}
