//! JSON and text serialization of verification reports and spectral curves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::SpectralCurve;
use crate::error::{Error, Result};
use crate::verify::{Mode, VerificationReport};

/// Spectral-curve output of the centralizer pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub operator_order: usize,
    pub degree_bound: usize,
    pub curve: BTreeMap<String, String>,
    pub hyperelliptic_degree: Option<usize>,
    pub commutator_is_zero: bool,
    pub curve_identity_holds: bool,
    pub characteristic_is_square: bool,
    pub elapsed_ms: f64,
    pub tool_version: String,
    pub seed: Option<u64>,
}

pub fn report_to_json(report: &VerificationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(s: &str) -> Result<VerificationReport> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn report_to_text(report: &VerificationReport) -> String {
    let verdict = if report.remainder_is_zero { "PASS" } else { "FAIL" };
    let mode = match report.mode {
        Mode::Symbolic => "symbolic",
        Mode::Specialized => "specialized",
    };
    let mut out = format!("{verdict} {} ({mode})", report.identity_id);
    if let Some(order) = report.witness_order {
        out.push_str(&format!(", witness order {order}"));
    }
    if let Some(r) = &report.remainder {
        out.push_str(&format!("\n  remainder: {r}"));
    }
    out
}

pub fn curve_to_json(curve: &SpectralCurve) -> String {
    serde_json::to_string(&curve.to_coefficient_map()).expect("map serializes")
}

pub fn curve_from_json(s: &str) -> Result<SpectralCurve> {
    let map: BTreeMap<String, String> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    SpectralCurve::from_coefficient_map(&map)
}

pub fn curve_report_to_json(report: &CurveReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
