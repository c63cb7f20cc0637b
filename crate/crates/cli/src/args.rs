use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commuting_core::random::DEFAULT_SEED;
use commuting_core::rings::parse_rational;
use commuting_core::{Family, Rational};

#[derive(Debug, Parser)]
#[command(name = "commuting", version, about = "Exact and numeric checks for Schrödinger-squared commuting operators")]
pub struct Cli {
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact eigenfunction identity L4 (p phi) = z p phi.
    VerifyTheorem(TheoremArgs),
    /// Exact commutativity of p^-1 L p with L2 modulo L2.
    VerifyCorollary(CorollaryArgs),
    /// Monic commuting partner of order 4g+2 by linear-algebra ansatz.
    Centralizer(CentralizerArgs),
    /// Spectral curve of L4 and its computed partner.
    SpectralCurve(CurveArgs),
    /// Finite-difference eigen-residual on an integrated kernel.
    Residual(ResidualArgs),
    /// Finite-difference check of the Bessel form of the exponential kernel equation.
    BesselCheck(BesselArgs),
    /// Every acceptance criterion, one line each.
    Suite(SuiteArgs),
}

pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cubic,
    Quartic,
    Exponential,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Cubic => Family::Cubic,
            FamilyArg::Quartic => Family::Quartic,
            FamilyArg::Exponential => Family::Exponential,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Specialized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    L4,
    L4g2,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub g: u32,
    /// Shift selector of the exponential family.
    #[arg(long, default_value_t = 0)]
    pub eps: u8,
    /// Potential coefficients a0 a1 ... as exact rationals ("num/den").
    #[arg(long, num_args = 1.., value_parser = rational_arg, allow_negative_numbers = true)]
    pub alpha: Vec<Rational>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report file (stdout when absent).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TheoremArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Defaults to symbolic without --alpha and specialized with it; a
    /// specialized run without --alpha draws parameters from the seed.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CorollaryArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = TargetArg::L4)]
    pub target: TargetArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CentralizerArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Fixed coefficient degree bound instead of the escalation schedule.
    #[arg(long)]
    pub degree_bound: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Interval in x (default [0,1], or [0,2] for the exponential family).
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
    /// Initial data phi(a), phi'(a).
    #[arg(long, num_args = 2, value_names = ["PHI", "DPHI"], allow_negative_numbers = true)]
    pub init: Option<Vec<f64>>,
    /// Index of the eigenvalue whose grid is written (roots sorted by real, then imaginary part).
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// CSV grid file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// JSON summary file (stdout when absent).
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct BesselArgs {
    #[arg(long, value_parser = rational_arg, allow_negative_numbers = true, default_value = "0")]
    pub alpha0: Rational,
    #[arg(long, value_parser = rational_arg, allow_negative_numbers = true, default_value = "1")]
    pub alpha1: Rational,
    #[arg(long, num_args = 2, value_names = ["Y0", "Y1"], default_values_t = [1.0, 5.0])]
    pub y_interval: Vec<f64>,
    #[arg(long, default_value_t = 1e-2)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub threshold: f64,
    /// Coarsest spacing of the refinement study.
    #[arg(long, default_value_t = 0.2)]
    pub coarsest: f64,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, default_value_t = 4.0)]
    pub min_order: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    /// Run only these criteria.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub only: Vec<u8>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}
