//! Parameter sweeps: resolve each axis value to a scenario, evaluate it in a
//! worker pool, and collect rows in axis order.

use std::io::Write;

use mzi_parity::fock_oracle::{
    build_input_state, j2_variance_oracle, oracle_cutoffs, parity_oracle, MziUnitary,
};
use mzi_parity::interferometry::parity_phase_slope;
use mzi_parity::sensitivity::{
    classical_limits, cramer_rao_bound, phase_uncertainty, phase_uncertainty_zero_limit,
    quantum_fisher_information,
};
use mzi_parity::states::{mean_photon_number, solve_r_for_nbar};
use mzi_parity::{DeltaPhi, Error, Scenario, StateKind, StateSpec};
use rayon::prelude::*;

use crate::config::{Axis, Constraint, Squeezing, SweepConfig};
use crate::error::{CliError, Result};
use crate::table::{write_csv, Cell};

/// Worker-pool size override.
pub const THREADS_ENV: &str = "MZI_PARITY_THREADS";
/// |closed form − oracle| allowed for ⟨Π⟩.
pub const PARITY_TOLERANCE: f64 = 1e-8;
/// |closed form − 4·Var(J₂)| allowed for the Fisher information.
pub const QFI_TOLERANCE: f64 = 1e-7;

/// Oracle values next to the closed forms for one row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub parity: f64,
    pub qfi: f64,
    pub parity_residual: f64,
    pub qfi_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub axis_value: f64,
    pub kind: StateKind,
    pub ops: u32,
    pub r: Option<f64>,
    pub nz: Option<f64>,
    pub theta: f64,
    pub phi: f64,
    pub nbar_squeezed: Option<f64>,
    pub total_nbar: Option<f64>,
    pub parity: Option<f64>,
    pub slope: Option<f64>,
    pub delta_phi: Option<DeltaPhi>,
    pub delta_phi_limit: Option<f64>,
    pub snl: Option<f64>,
    pub hl: Option<f64>,
    pub qfi: Option<f64>,
    pub crb: Option<f64>,
    pub oracle: Option<OracleCheck>,
    /// Short snake_case tag when the row could not be evaluated or verified.
    pub error: Option<String>,
}

impl ResultRow {
    fn blank(axis_value: f64, config: &SweepConfig) -> Self {
        Self {
            axis_value,
            kind: config.kind,
            ops: config.ops,
            r: None,
            nz: None,
            theta: config.theta,
            phi: config.phi,
            nbar_squeezed: None,
            total_nbar: None,
            parity: None,
            slope: None,
            delta_phi: None,
            delta_phi_limit: None,
            snl: None,
            hl: None,
            qfi: None,
            crb: None,
            oracle: None,
            error: None,
        }
    }
}

/// Rows of one sweep, in axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub rows: Vec<ResultRow>,
}

const BASE_COLUMNS: [&str; 17] = [
    "axis_value",
    "kind",
    "ops",
    "r",
    "nz",
    "theta",
    "phi",
    "nbar_squeezed",
    "total_nbar",
    "parity",
    "slope",
    "delta_phi",
    "delta_phi_limit",
    "snl",
    "hl",
    "qfi",
    "crb",
];
const ORACLE_COLUMNS: [&str; 4] = ["oracle_parity", "oracle_qfi", "parity_residual", "qfi_residual"];

impl SweepTable {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = BASE_COLUMNS.to_vec();
        if self.config.verify {
            h.extend(ORACLE_COLUMNS);
        }
        h.push("error");
        h
    }

    pub fn cells(&self) -> Vec<Vec<Cell>> {
        self.rows
            .iter()
            .map(|row| {
                let mut c: Vec<Cell> = vec![
                    row.axis_value.into(),
                    row.kind.as_str().into(),
                    row.ops.into(),
                    row.r.into(),
                    row.nz.into(),
                    row.theta.into(),
                    row.phi.into(),
                    row.nbar_squeezed.into(),
                    row.total_nbar.into(),
                    row.parity.into(),
                    row.slope.into(),
                    row.delta_phi.into(),
                    row.delta_phi_limit.into(),
                    row.snl.into(),
                    row.hl.into(),
                    row.qfi.into(),
                    row.crb.into(),
                ];
                if self.config.verify {
                    let o = row.oracle;
                    c.extend([
                        o.map(|o| o.parity).into(),
                        o.map(|o| o.qfi).into(),
                        o.map(|o| o.parity_residual).into(),
                        o.and_then(|o| o.qfi_residual).into(),
                    ]);
                }
                c.push(row.error.as_deref().into());
                c
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_csv(out, &self.header(), &self.cells())
    }

    /// Largest oracle residuals, when the sweep was verified.
    pub fn max_residuals(&self) -> Option<(f64, f64)> {
        if !self.config.verify {
            return None;
        }
        let checks = self.rows.iter().filter_map(|r| r.oracle);
        Some(checks.fold((0.0f64, 0.0f64), |(p, q), o| {
            (p.max(o.parity_residual), q.max(o.qfi_residual.unwrap_or(0.0)))
        }))
    }
}

/// Runs `f` in a pool sized by [`THREADS_ENV`], or the global pool if unset.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| CliError::Pool(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

pub fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::Unattainable { .. } => "unattainable",
        Error::DegenerateState { .. } => "degenerate_state",
        Error::Truncation { .. } => "truncation",
        Error::Indeterminate { .. } => "indeterminate",
        Error::NonFinite(_) => "non_finite",
        Error::ParityOutOfRange(_) => "parity_out_of_range",
        Error::SectorRange { .. } => "oracle_too_large",
        Error::NonPositive { .. } => "non_positive",
        _ => "invalid",
    }
}

/// The scenario and phase at one axis value.
fn resolve(config: &SweepConfig, x: f64) -> std::result::Result<(Scenario, f64), &'static str> {
    let tag = |e: Error| error_tag(&e);
    let ops = if config.axis == Axis::Ops { x as u32 } else { config.ops };
    let kind = config.kind;
    let solve = |target: f64| solve_r_for_nbar(kind, ops, target).map_err(tag);
    let base_r = || match config.squeezing {
        Squeezing::R(r) => Ok(r),
        Squeezing::TargetNbar(t) => solve(t),
    };

    let (r, nz) = match config.axis {
        Axis::Phi | Axis::Ops => (base_r()?, config.nz),
        Axis::R => (x, config.nz),
        Axis::Nz => (base_r()?, x),
        Axis::TotalNbar => match config.constraint {
            Some(Constraint::FixNbarSplit) => (solve(x / 2.0)?, x / 2.0),
            Some(Constraint::FixR) => {
                let r = base_r()?;
                let spec = StateSpec::new(kind, ops, r).map_err(tag)?;
                (r, x - mean_photon_number(&spec).map_err(tag)?)
            }
            Some(Constraint::FixNbarSqueezed) => {
                let Squeezing::TargetNbar(t) = config.squeezing else {
                    return Err("invalid");
                };
                (solve(t)?, x - t)
            }
            None => return Err("invalid"),
        },
    };
    if nz < 0.0 {
        return Err("negative_coherent");
    }
    let spec = StateSpec::new(kind, ops, r).map_err(tag)?;
    let scenario = Scenario::new(spec, nz, config.theta).map_err(tag)?;
    let phi = if config.axis == Axis::Phi { x } else { config.phi };
    Ok((scenario, phi))
}

fn evaluate(config: &SweepConfig, row: &mut ResultRow, scenario: &Scenario) -> std::result::Result<(), &'static str> {
    let tag = |e: Error| error_tag(&e);
    let spec = scenario.squeezed();
    let nbar = mean_photon_number(spec).map_err(tag)?;
    let total = nbar + scenario.nz();
    row.nbar_squeezed = Some(nbar);
    row.total_nbar = Some(total);
    if total > 0.0 {
        let (snl, hl) = classical_limits(total).map_err(tag)?;
        row.snl = Some(snl);
        row.hl = Some(hl);
    }

    let pt = parity_phase_slope(scenario, row.phi).map_err(tag)?;
    row.parity = Some(pt.value);
    row.slope = Some(pt.slope);

    let real = scenario.theta() == 0.0;
    if real {
        // the literal forms exist for at most two operations
        row.delta_phi_limit = phase_uncertainty_zero_limit(scenario, config.variant).ok();
        let qfi = quantum_fisher_information(scenario).map_err(tag)?;
        row.qfi = Some(qfi);
        row.crb = cramer_rao_bound(qfi).ok();
    }
    row.delta_phi = Some(match phase_uncertainty(scenario, row.phi) {
        Ok(d) => d,
        Err(Error::Indeterminate { .. }) => match row.delta_phi_limit {
            Some(lim) => DeltaPhi::Finite(lim),
            None => return Err("indeterminate"),
        },
        Err(e) => return Err(tag(e)),
    });
    Ok(())
}

fn verify_row(row: &mut ResultRow, scenario: &Scenario, u: &MziUnitary, cutoffs: (usize, usize)) -> std::result::Result<(), &'static str> {
    let tag = |e: Error| error_tag(&e);
    let state = build_input_state(scenario, cutoffs.0, cutoffs.1).map_err(tag)?;
    let out = u.with_phi(row.phi).map_err(tag)?.apply(&state).map_err(tag)?;
    let parity = parity_oracle(&out);
    let qfi = 4.0 * j2_variance_oracle(&state);
    let check = OracleCheck {
        parity,
        qfi,
        parity_residual: row.parity.map_or(f64::INFINITY, |p| (p - parity).abs()),
        qfi_residual: row.qfi.map(|q| (q - qfi).abs()),
    };
    row.oracle = Some(check);
    if check.parity_residual > PARITY_TOLERANCE || check.qfi_residual.is_some_and(|d| d > QFI_TOLERANCE) {
        return Err("oracle_mismatch");
    }
    Ok(())
}

/// One row per axis value, in axis order; failing rows carry an error tag.
pub fn run_scenario_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let xs = config.range.values();
    let rows = with_pool(|| {
        let resolved: Vec<_> = xs.par_iter().map(|&x| resolve(config, x)).collect();

        let cutoffs: Vec<Option<(usize, usize)>> = if config.verify {
            resolved
                .par_iter()
                .map(|res| res.as_ref().ok().and_then(|(s, _)| oracle_cutoffs(s).ok()))
                .collect()
        } else {
            vec![None; xs.len()]
        };
        let top = cutoffs
            .iter()
            .flatten()
            .map(|(a, b)| a + b)
            .filter(|&n| n <= config.oracle_max_sector)
            .max();
        let unitary = top.map(|n| MziUnitary::new(0.0, n).expect("finite phase"));

        xs.par_iter()
            .zip(resolved.par_iter())
            .zip(cutoffs.par_iter())
            .map(|((&x, res), cut)| {
                let mut row = ResultRow::blank(x, config);
                let (scenario, phi) = match res {
                    Ok(v) => v,
                    Err(tag) => {
                        row.error = Some(tag.to_string());
                        return row;
                    }
                };
                row.r = Some(scenario.squeezed().r());
                row.ops = scenario.squeezed().ops();
                row.nz = Some(scenario.nz());
                row.phi = *phi;
                if let Err(tag) = evaluate(config, &mut row, scenario) {
                    row.error = Some(tag.to_string());
                    return row;
                }
                if config.verify {
                    let outcome = match (cut, &unitary) {
                        (None, _) => oracle_cutoffs(scenario).map(|_| ()).map_err(|e| error_tag(&e)),
                        (Some((a, b)), _) if a + b > config.oracle_max_sector => Err("oracle_too_large"),
                        (Some(c), Some(u)) => verify_row(&mut row, scenario, u, *c),
                        (Some(_), None) => Err("oracle_too_large"),
                    };
                    if let Err(tag) = outcome {
                        row.error = Some(tag.to_string());
                    }
                }
                row
            })
            .collect()
    })?;
    Ok(SweepTable {
        config: config.clone(),
        rows,
    })
}
