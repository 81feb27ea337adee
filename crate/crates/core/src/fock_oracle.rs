//! Brute-force two-mode Fock-space simulator.
//!
//! Builds |z⟩_a ⊗ |ψ⟩_b on a truncated grid, applies the interferometer
//! sector by sector, and measures parity and the J₂ variance directly. It
//! depends only on the Fock expansion of the input (from [`crate::states`])
//! and the mode transformation a† → a† cos(φ/2) + b† sin(φ/2); none of the
//! closed forms in `interferometry` or `sensitivity` are used.
//!
//! Within the sector of N photons, basis |n, N−n⟩, the generator is
//! K = (a b† − a† b)/2 with U(φ) = e^{φK}. K is real antisymmetric and
//! tridiagonal, and conjugating by diag(iⁿ) turns it into i·T with T real
//! symmetric tridiagonal. One eigendecomposition T = V Λ Vᵀ per sector then
//! serves every φ: U = diag(iⁿ) V e^{iφΛ} Vᵀ diag((−i)ⁿ).

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::states::{cutoff_for_tail, fock_amplitudes, Scenario, FOCK_TAIL_TOLERANCE};

/// Tail mass (top 10% of either index range) above which a state is unreliable.
pub const RELIABLE_TAIL: f64 = 1e-9;

/// Dense amplitudes c[n][m] for n < dim_a photons in mode a and m < dim_b in
/// mode b, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFockState {
    dim_a: usize,
    dim_b: usize,
    amps: Vec<Complex64>,
}

impl TwoModeFockState {
    pub fn from_amplitudes(dim_a: usize, dim_b: usize, amps: Vec<Complex64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || amps.len() != dim_a * dim_b {
            return Err(Error::InvalidSpec(format!(
                "amplitude grid of length {} does not match {dim_a}×{dim_b}",
                amps.len()
            )));
        }
        if amps.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("Fock amplitude"));
        }
        Ok(Self { dim_a, dim_b, amps })
    }

    /// The basis state |n, m⟩.
    pub fn basis(dim_a: usize, dim_b: usize, n: usize, m: usize) -> Result<Self> {
        if n >= dim_a || m >= dim_b {
            return Err(Error::InvalidSpec(format!(
                "|{n}, {m}⟩ lies outside a {dim_a}×{dim_b} grid"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim_a * dim_b];
        amps[n * dim_b + m] = Complex64::new(1.0, 0.0);
        Ok(Self { dim_a, dim_b, amps })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amp(&self, n: usize, m: usize) -> Complex64 {
        if n < self.dim_a && m < self.dim_b {
            self.amps[n * self.dim_b + m]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let db = self.dim_b;
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i / db, i % db, c))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability in the top 10% of either index range.
    pub fn tail_mass(&self) -> f64 {
        let edge = |dim: usize| dim - dim.div_ceil(10);
        let (ea, eb) = (edge(self.dim_a), edge(self.dim_b));
        self.entries()
            .filter(|&(n, m, _)| n >= ea || m >= eb)
            .map(|(_, _, c)| c.norm_sqr())
            .sum()
    }

    pub fn is_reliable(&self) -> bool {
        self.tail_mass() < RELIABLE_TAIL
    }

    /// Largest total photon number carrying a non-zero amplitude.
    pub fn max_occupied_sector(&self) -> usize {
        self.entries()
            .filter(|(_, _, c)| c.norm_sqr() > 0.0)
            .map(|(n, m, _)| n + m)
            .max()
            .unwrap_or(0)
    }

    /// Σ_{n+m=N} |c[n][m]|² for N = 0..dim_a+dim_b−1.
    pub fn sector_populations(&self) -> Vec<f64> {
        let mut pops = vec![0.0; self.dim_a + self.dim_b - 1];
        for (n, m, c) in self.entries() {
            pops[n + m] += c.norm_sqr();
        }
        pops
    }

    /// (⟨n_a⟩, ⟨n_b⟩).
    pub fn mean_photons(&self) -> (f64, f64) {
        self.entries().fold((0.0, 0.0), |(na, nb), (n, m, c)| {
            let p = c.norm_sqr();
            (na + n as f64 * p, nb + m as f64 * p)
        })
    }

    /// (⟨a⟩, ⟨b⟩).
    pub fn mode_means(&self) -> (Complex64, Complex64) {
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        for (n, m, c) in self.entries() {
            if n + 1 < self.dim_a {
                a += c.conj() * self.amp(n + 1, m) * ((n + 1) as f64).sqrt();
            }
            if m + 1 < self.dim_b {
                b += c.conj() * self.amp(n, m + 1) * ((m + 1) as f64).sqrt();
            }
        }
        (a, b)
    }

    /// Copy into a larger grid (amplitudes keep their (n, m) positions).
    fn padded(&self, dim_a: usize, dim_b: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim_a * dim_b];
        for (n, m, c) in self.entries() {
            amps[n * dim_b + m] = c;
        }
        Self { dim_a, dim_b, amps }
    }
}

/// Coherent-state amplitudes e^{−|z|²/2} zⁿ/√n! for n = 0..=cutoff, and the
/// probability beyond the cutoff.
fn coherent_amplitudes(z: Complex64, cutoff: usize) -> (Vec<Complex64>, f64) {
    let nz = z.norm_sqr();
    let mut amps = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new((-nz / 2.0).exp(), 0.0);
    amps.push(c);
    for n in 1..=cutoff {
        c = c * z / (n as f64).sqrt();
        amps.push(c);
    }
    // Poisson tail, summed term by term past the mode so it cannot cancel.
    let mut p = c.norm_sqr();
    let mut tail = 0.0;
    let mut n = cutoff;
    loop {
        n += 1;
        p *= nz / n as f64;
        tail += p;
        if p == 0.0 || (n as f64 > nz && p < 1e-30 * tail) {
            break;
        }
    }
    (amps, tail)
}

/// Tail mass the oracle leaves out of each input mode. Truncation errors in
/// ⟨Π⟩ enter through interference with the kept amplitudes, so they scale with
/// the square root of this.
pub const ORACLE_TAIL_MASS: f64 = 1e-24;

/// Smallest coherent-mode cutoff whose tail is below [`ORACLE_TAIL_MASS`].
pub fn coherent_required_cutoff(nz: f64) -> usize {
    let z = Complex64::new(nz.sqrt(), 0.0);
    let mut cutoff = (nz + 10.0 * nz.sqrt()).ceil() as usize + 10;
    // shrink to the smallest passing value, then grow if needed
    while cutoff > 0 && coherent_amplitudes(z, cutoff - 1).1 < ORACLE_TAIL_MASS {
        cutoff -= 1;
    }
    while coherent_amplitudes(z, cutoff).1 >= ORACLE_TAIL_MASS {
        cutoff += 1;
    }
    cutoff
}

/// |z⟩_a ⊗ |ψ⟩_b with mode-a amplitudes up to `cutoff_a` and mode-b amplitudes
/// up to `cutoff_b`.
///
/// The grid is padded to (cutoff_a + cutoff_b)·9/8 + 2 per mode, so the
/// interferometer can move every photon into either mode without leaving it.
pub fn build_input_state(
    scenario: &Scenario,
    cutoff_a: usize,
    cutoff_b: usize,
) -> Result<TwoModeFockState> {
    let (zr, zi) = scenario.z();
    let (coh, tail) = coherent_amplitudes(Complex64::new(zr, zi), cutoff_a);
    if tail > FOCK_TAIL_TOLERANCE {
        return Err(Error::Truncation {
            cutoff: cutoff_a,
            required: coherent_required_cutoff(scenario.nz()),
            tail,
        });
    }
    let squeezed = fock_amplitudes(scenario.squeezed(), cutoff_b)?;
    let kept: f64 = coh.iter().map(|c| c.norm_sqr()).sum();
    let scale = 1.0 / kept.sqrt();

    let total = cutoff_a + cutoff_b;
    let dim = total + total / 8 + 2;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (n, &ca) in coh.iter().enumerate() {
        for (m, &cb) in squeezed.iter().enumerate() {
            amps[n * dim + m] = ca * cb * scale;
        }
    }
    Ok(TwoModeFockState {
        dim_a: dim,
        dim_b: dim,
        amps,
    })
}

/// Mode-a and mode-b cutoffs leaving at most [`ORACLE_TAIL_MASS`] out of each.
pub fn oracle_cutoffs(scenario: &Scenario) -> Result<(usize, usize)> {
    Ok((
        coherent_required_cutoff(scenario.nz()),
        cutoff_for_tail(scenario.squeezed(), ORACLE_TAIL_MASS)?,
    ))
}

/// [`build_input_state`] with both cutoffs from [`oracle_cutoffs`].
pub fn build_input_state_auto(scenario: &Scenario) -> Result<TwoModeFockState> {
    let (cutoff_a, cutoff_b) = oracle_cutoffs(scenario)?;
    build_input_state(scenario, cutoff_a, cutoff_b)
}

/// Eigendecomposition of the symmetric tridiagonal form of one sector.
#[derive(Debug)]
struct SectorSpectrum {
    eigvals: DVector<f64>,
    eigvecs: DMatrix<f64>,
}

impl SectorSpectrum {
    fn new(sector: usize) -> Self {
        let dim = sector + 1;
        let mut t = DMatrix::<f64>::zeros(dim, dim);
        for n in 1..=sector {
            // ⟨n−1, N−n+1| K |n, N−n⟩ = √(n(N−n+1))/2
            let beta = ((n * (sector - n + 1)) as f64).sqrt() / 2.0;
            t[(n - 1, n)] = beta;
            t[(n, n - 1)] = beta;
        }
        let eig = SymmetricEigen::new(t);
        Self {
            eigvals: eig.eigenvalues,
            eigvecs: eig.eigenvectors,
        }
    }

    /// x ← e^{φK} x for x indexed by the mode-a photon number.
    fn apply(&self, phi: f64, x: &mut [Complex64]) {
        let v = &self.eigvecs;
        let dim = x.len();
        // y = diag((−i)ⁿ) x
        let y: Vec<Complex64> = x
            .iter()
            .enumerate()
            .map(|(n, &c)| c * i_pow(4 - n % 4))
            .collect();
        // w = e^{iφΛ} Vᵀ y
        let w: Vec<Complex64> = (0..dim)
            .map(|j| {
                let col = v.column(j);
                let dot = y
                    .iter()
                    .zip(col.iter())
                    .fold(Complex64::new(0.0, 0.0), |acc, (c, &vv)| acc + c * vv);
                dot * Complex64::from_polar(1.0, phi * self.eigvals[j])
            })
            .collect();
        // x = diag(iⁿ) V w
        for (n, out) in x.iter_mut().enumerate() {
            let row = v.row(n);
            let s = row
                .iter()
                .zip(&w)
                .fold(Complex64::new(0.0, 0.0), |acc, (&vv, c)| acc + c * vv);
            *out = s * i_pow(n % 4);
        }
    }
}

fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The interferometer at phase `phi`, valid on all sectors up to `max_sector`.
///
/// The per-sector spectra do not depend on φ; [`MziUnitary::with_phi`] reuses
/// them.
#[derive(Debug, Clone)]
pub struct MziUnitary {
    phi: f64,
    sectors: Arc<Vec<SectorSpectrum>>,
}

impl MziUnitary {
    pub fn new(phi: f64, max_sector: usize) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite("phase shift"));
        }
        let sectors = (0..=max_sector)
            .into_par_iter()
            .map(SectorSpectrum::new)
            .collect();
        Ok(Self {
            phi,
            sectors: Arc::new(sectors),
        })
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite("phase shift"));
        }
        Ok(Self {
            phi,
            sectors: Arc::clone(&self.sectors),
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn max_sector(&self) -> usize {
        self.sectors.len() - 1
    }

    /// U(φ)|ψ⟩. The output grid is enlarged if needed so that every occupied
    /// sector fits in both modes.
    pub fn apply(&self, state: &TwoModeFockState) -> Result<TwoModeFockState> {
        let top = state.max_occupied_sector();
        if top > self.max_sector() {
            return Err(Error::SectorRange {
                needed: top,
                available: self.max_sector(),
            });
        }
        let mut out = state.padded(state.dim_a.max(top + 1), state.dim_b.max(top + 1));
        let db = out.dim_b;
        let mut buf = Vec::with_capacity(top + 1);
        for (sector, spectrum) in self.sectors.iter().enumerate().take(top + 1) {
            buf.clear();
            buf.extend((0..=sector).map(|n| out.amps[n * db + sector - n]));
            if buf.iter().all(|c| c.norm_sqr() == 0.0) {
                continue;
            }
            spectrum.apply(self.phi, &mut buf);
            for (n, &c) in buf.iter().enumerate() {
                out.amps[n * db + sector - n] = c;
            }
        }
        Ok(out)
    }
}

/// One-shot U(φ)|ψ⟩; builds the sector spectra it needs.
pub fn apply_interferometer(state: &TwoModeFockState, phi: f64) -> Result<TwoModeFockState> {
    MziUnitary::new(phi, state.max_occupied_sector())?.apply(state)
}

/// ⟨(−1)^{b†b}⟩.
pub fn parity_oracle(state: &TwoModeFockState) -> f64 {
    state
        .entries()
        .map(|(_, m, c)| if m % 2 == 0 { c.norm_sqr() } else { -c.norm_sqr() })
        .sum()
}

/// ⟨J₂²⟩ − ⟨J₂⟩² with J₂ = (a†b − ab†)/(2i) applied sparsely.
///
/// J₂ = iK for the sector generator K, so ⟨J₂²⟩ = ‖Kψ‖² and ⟨J₂⟩ = i⟨ψ|Kψ⟩.
pub fn j2_variance_oracle(state: &TwoModeFockState) -> f64 {
    // K|n,m⟩ = ½(√(n(m+1)) |n−1,m+1⟩ − √((n+1)m) |n+1,m−1⟩)
    let (da, db) = (state.dim_a + 1, state.dim_b + 1);
    let mut k_psi = vec![Complex64::new(0.0, 0.0); da * db];
    for (n, m, c) in state.entries() {
        if n > 0 {
            k_psi[(n - 1) * db + m + 1] += c * (0.5 * ((n * (m + 1)) as f64).sqrt());
        }
        if m > 0 {
            k_psi[(n + 1) * db + m - 1] -= c * (0.5 * (((n + 1) * m) as f64).sqrt());
        }
    }
    let second: f64 = k_psi.iter().map(|c| c.norm_sqr()).sum();
    let overlap: Complex64 = state
        .entries()
        .map(|(n, m, c)| c.conj() * k_psi[n * db + m])
        .sum();
    // ⟨J₂⟩ = i⟨K⟩ and ⟨K⟩ is imaginary, so ⟨J₂⟩² = |⟨K⟩|²
    second - overlap.norm_sqr()
}
