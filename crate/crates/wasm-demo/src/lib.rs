//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Three operations are exported: the parity signal over a phase window, the
//! phase uncertainty over the same window, and a summary of one scenario
//! (photon numbers, Fisher information, reference limits). The plain Rust
//! functions underneath are what the native tests exercise.

use mzi_parity::interferometry::parity_expectation;
use mzi_parity::sensitivity::{
    classical_limits, cramer_rao_bound, phase_uncertainty, phase_uncertainty_zero_limit,
    quantum_fisher_information,
};
use mzi_parity::states::mean_photon_number;
use mzi_parity::{Error, Scenario, StateKind, StateSpec, Variant};
use wasm_bindgen::prelude::*;

/// Largest grid the page may request in one call.
pub const MAX_POINTS: usize = 20_000;

fn scenario(kind: &str, ops: u32, r: f64, nz: f64) -> Result<Scenario, String> {
    let kind: StateKind = kind.parse().map_err(|e: Error| e.to_string())?;
    let ops = if kind == StateKind::Plain { 0 } else { ops };
    let spec = StateSpec::new(kind, ops, r).map_err(|e| e.to_string())?;
    Scenario::real(spec, nz).map_err(|e| e.to_string())
}

fn grid(phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_POINTS}"));
    }
    if !(phi_min.is_finite() && phi_max.is_finite()) || phi_min >= phi_max {
        return Err("need a finite window with phi_min < phi_max".into());
    }
    let step = (phi_max - phi_min) / (points - 1) as f64;
    Ok((0..points).map(|i| phi_min + step * i as f64).collect())
}

/// ⟨Π⟩ on an even grid of `points` phases.
pub fn parity_values(kind: &str, ops: u32, r: f64, nz: f64, phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>, String> {
    let s = scenario(kind, ops, r, nz)?;
    grid(phi_min, phi_max, points)?
        .into_iter()
        .map(|phi| parity_expectation(&s, phi).map_err(|e| e.to_string()))
        .collect()
}

/// Δφ on the same grid; +∞ where the slope vanishes, the φ → 0 limit at φ = 0.
pub fn delta_phi_values(kind: &str, ops: u32, r: f64, nz: f64, phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>, String> {
    let s = scenario(kind, ops, r, nz)?;
    grid(phi_min, phi_max, points)?
        .into_iter()
        .map(|phi| match phase_uncertainty(&s, phi) {
            Ok(d) => Ok(d.value()),
            Err(Error::Indeterminate { .. }) => {
                phase_uncertainty_zero_limit(&s, Variant::SeriesConsistent).map_err(|e| e.to_string())
            }
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub nbar_squeezed: f64,
    pub total_nbar: f64,
    pub qfi: f64,
    pub crb: f64,
    pub delta_phi_zero: f64,
    pub snl: f64,
    pub hl: f64,
}

pub fn summarize(kind: &str, ops: u32, r: f64, nz: f64) -> Result<Summary, String> {
    let s = scenario(kind, ops, r, nz)?;
    let e = |e: Error| e.to_string();
    let nbar = mean_photon_number(s.squeezed()).map_err(e)?;
    let total = nbar + nz;
    let qfi = quantum_fisher_information(&s).map_err(e)?;
    let (snl, hl) = classical_limits(total).map_err(e)?;
    Ok(Summary {
        nbar_squeezed: nbar,
        total_nbar: total,
        qfi,
        crb: cramer_rao_bound(qfi).map_err(e)?,
        delta_phi_zero: phase_uncertainty_zero_limit(&s, Variant::SeriesConsistent).map_err(e)?,
        snl,
        hl,
    })
}

#[wasm_bindgen(js_name = parityCurve)]
pub fn parity_curve(kind: &str, ops: u32, r: f64, nz: f64, phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    parity_values(kind, ops, r, nz, phi_min, phi_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = deltaPhiCurve)]
pub fn delta_phi_curve(kind: &str, ops: u32, r: f64, nz: f64, phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    delta_phi_values(kind, ops, r, nz, phi_min, phi_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = scenarioSummary)]
pub fn scenario_summary(kind: &str, ops: u32, r: f64, nz: f64) -> Result<Summary, JsError> {
    summarize(kind, ops, r, nz).map_err(|e| JsError::new(&e))
}
