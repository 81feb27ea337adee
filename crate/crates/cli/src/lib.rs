//! Sweeps, figure data and verification suites on top of the `mzi-parity`
//! engine. The `mzi-parity` binary is a thin clap front end over this crate.

pub mod config;
pub mod error;
pub mod figures;
pub mod sweep;
pub mod table;
pub mod verify;

pub use error::{CliError, Result};
