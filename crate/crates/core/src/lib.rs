//! Exact algebra of ordinary differential operators with polynomial and
//! exponential coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`rings`]: exact differential rings (rationals, sparse multivariate
//!   polynomials, monic quotient extensions, twisted Laurent polynomials,
//!   fraction fields).
//! * [`diffop`] and [`series`]: the noncommutative operator algebra and its
//!   action on truncated power series.
//! * [`families`]: the Schrödinger-squared operator families, their eigenvalue
//!   polynomials and eigenfunction multipliers.
//! * [`verify`]: exact verification of the eigenfunction identities and the
//!   "commutative modulo `L2`" property via right division.
//! * [`centralizer`] and [`spectral`]: commuting partners found by exact linear
//!   algebra and their spectral curves.
//! * [`report`]: machine-readable report serialization.

pub mod centralizer;
pub mod curve;
pub mod diffop;
pub mod error;
pub mod families;
pub mod linalg;
pub mod random;
pub mod report;
pub mod rings;
pub mod series;
pub mod spectral;
pub mod verify;

pub use curve::SpectralCurve;
pub use diffop::DiffOp;
pub use error::{Error, Result};
pub use families::{CharPoly, Family, FamilySpec};
pub use rings::{DiffRing, MultiPoly, PolyRing, Rational, Var};
pub use verify::VerificationReport;

/// Version string embedded in every emitted report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
