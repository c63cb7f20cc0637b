//! Report and grid serialization, and writing to files or the output stream.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use commuting_numeric::GridFunction;

use crate::CliError;

pub const CSV_HEADER: &str = "x,phi_re,phi_im,psi_re,psi_im,residual";

/// Joins relative paths onto the output-directory override.
pub fn resolve(out_dir: Option<&Path>, path: &Path) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes `body` to `path`, or to `out` when no path is given.
pub fn deliver(body: &str, path: Option<&Path>, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(out_dir, p);
            std::fs::write(&p, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))
        }
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn push_f64(s: &mut String, v: f64) {
    write!(s, "{v:e}").expect("string write");
}

/// One line per grid point; `psi` columns are empty when `psi` was never
/// formed and `residual` is empty outside the stencil interior.
pub fn grid_to_csv(grid: &GridFunction) -> String {
    let mut s = String::with_capacity(64 * (grid.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for row in grid.rows() {
        push_f64(&mut s, row.x);
        s.push(',');
        push_f64(&mut s, row.phi.re);
        s.push(',');
        push_f64(&mut s, row.phi.im);
        s.push(',');
        if let Some(psi) = row.psi {
            push_f64(&mut s, psi.re);
            s.push(',');
            push_f64(&mut s, psi.im);
        } else {
            s.push(',');
        }
        s.push(',');
        if let Some(r) = row.residual {
            push_f64(&mut s, r);
        }
        s.push('\n');
    }
    s
}

/// Report of a centralizer search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub operator_order: usize,
    pub degree_bound: usize,
    pub solution_dim: usize,
    pub operator: String,
    pub commutator_is_zero: bool,
    pub elapsed_ms: f64,
    pub tool_version: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootResidual {
    pub z_re: f64,
    pub z_im: f64,
    pub max_relative: f64,
}

/// Report of the finite-difference eigen-residual check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub interval: (f64, f64),
    pub step: f64,
    pub tol: f64,
    pub stencil_order: u32,
    pub threshold: f64,
    pub roots: Vec<RootResidual>,
    pub max_relative: f64,
    pub passed: bool,
    pub diagnostic: Option<String>,
    pub elapsed_ms: f64,
    pub tool_version: String,
    pub seed: Option<u64>,
}

/// Report of the change-of-variables check and its refinement study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub y_interval: (f64, f64),
    pub step: f64,
    pub tol: f64,
    pub max_residual: f64,
    pub threshold: f64,
    pub refinement_steps: Vec<f64>,
    pub refinement_residuals: Vec<f64>,
    pub observed_orders: Vec<f64>,
    pub min_order: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub tool_version: String,
    pub seed: Option<u64>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn centralizer_text(r: &CentralizerReport) -> String {
    format!(
        "{} {}: order {} at degree bound {} (solution space dim {})\n  M = {}\n",
        verdict(r.commutator_is_zero),
        r.identity_id,
        r.operator_order,
        r.degree_bound,
        r.solution_dim,
        r.operator
    )
}

pub fn residual_text(r: &ResidualReport) -> String {
    let mut s = format!("{} {}: max relative residual {:.3e} (threshold {:.0e})\n", verdict(r.passed), r.identity_id, r.max_relative, r.threshold);
    for root in &r.roots {
        writeln!(s, "  z = {} {:+}i: {:.3e}", root.z_re, root.z_im, root.max_relative).expect("string write");
    }
    if let Some(d) = &r.diagnostic {
        writeln!(s, "  diagnostic: {d}").expect("string write");
    }
    s
}

pub fn bessel_text(r: &BesselReport) -> String {
    let orders: Vec<String> = r.observed_orders.iter().map(|o| format!("{o:.2}")).collect();
    format!(
        "{} {}: residual {:.3e} (threshold {:.0e}); refinement orders [{}], min {:.2}\n",
        verdict(r.passed),
        r.identity_id,
        r.max_residual,
        r.threshold,
        orders.join(", "),
        r.min_order
    )
}
