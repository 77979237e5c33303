//! Second-order shift operators (SUSUSY) for one-dimensional Schrödinger
//! Hamiltonians.
//!
//! Given the coefficient function `β(x)` of a second-order intertwiner
//! `A† = d²/dx² + β d/dx + γ`, the crate reconstructs the pair of potentials
//! `V`, `Ṽ` and the coefficient `γ`, checks the operator identities they must
//! satisfy, integrates the nonlinear equation that `β` obeys when `V = x²`,
//! maps the initial-condition plane into singularity-free and singular
//! regions, and compares low-lying spectra of the partner potentials with the
//! oscillator.
//!
//! Module map:
//!
//! * [`operators`]: closed forms for `V`, `Ṽ`, `γ` and operator residual checks.
//! * [`beta_ode`]: the oscillator `β`-equation, its adaptive integrator and the
//!   closed-form particular family used as an oracle.
//! * [`scanner`]: point classification, threshold bisection and region maps.
//! * [`spectral`]: finite-difference Hamiltonians, Sturm-bisection eigenvalues,
//!   Abraham–Moses potentials and double-well analysis.

pub mod beta_ode;
pub mod config;
mod error;
pub mod interp;
pub mod io;
pub mod operators;
pub mod scanner;
pub mod special;
pub mod spectral;

pub use config::ScanConfig;
pub use error::{Error, Result};

/// Crate version, stamped into every file header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
