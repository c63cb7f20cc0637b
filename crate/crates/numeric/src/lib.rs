//! Floating-point cross-checks of the eigenfunction identities.
//!
//! Everything here works in double-double arithmetic and applies operators
//! by finite differences only, so it shares no reduction code with the exact
//! engine beyond the family definitions and multipliers being tested.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod dd;
pub mod grid;
pub mod kernel;
pub mod ode;
pub mod residual;
pub mod roots;
pub mod stencil;

pub use bessel::{bessel_change_check, bessel_convergence, BesselConfig, BesselOutcome, Convergence};
pub use grid::{GridFunction, GridMeta, GridRow};
pub use kernel::{integrate_kernel, KernelConfig};
pub use residual::{eigen_residual, ResidualOutcome};
pub use roots::numeric_roots;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error(transparent)]
    Core(#[from] commuting_core::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("max |psi| = {0:e} is below the underflow floor")]
    DegenerateSample(f64),
}

pub type Result<T> = std::result::Result<T, NumericError>;
