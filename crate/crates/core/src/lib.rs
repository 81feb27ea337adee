//! Phase estimation with parity detection in a Mach–Zehnder interferometer fed
//! by a coherent state and a plain, photon-added, or photon-subtracted squeezed
//! vacuum.
//!
//! - [`series`]: Legendre recurrences, truncated bivariate jets, dual numbers.
//! - [`states`]: normalizations, moments and Fock amplitudes of the squeezed port.
//! - [`interferometry`]: the parity signal, its slope, and small-φ coefficients.
//! - [`sensitivity`]: Δφ, its φ → 0 limit, quantum Fisher information, SNL/HL.
//! - [`fock_oracle`]: an independent truncated Fock-space simulator.

pub mod error;
pub mod fock_oracle;
pub mod interferometry;
pub mod sensitivity;
pub mod series;
pub mod states;

pub use error::{Error, Result};
pub use interferometry::{ParityPoint, Variant};
pub use sensitivity::{DeltaPhi, SensitivityPoint};
pub use states::{Scenario, StateKind, StateSpec};
