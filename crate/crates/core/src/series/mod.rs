//! Special functions and formal-series primitives.

mod complex;
mod dual;
mod jet;
mod legendre;
mod scalar;

pub use complex::Cx;
pub use dual::{Dual2, DualScalar};
pub use jet::{jet_exp_quadratic, jet_mixed_derivative, BivariateJet, QuadraticForm};
pub(crate) use jet::factorial;
pub use legendre::{legendre_imag_realified, legendre_p};
pub use scalar::{Real, Scalar};
