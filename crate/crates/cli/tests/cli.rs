use std::collections::BTreeMap;
use std::path::Path;

use commuting_cli::emit::CSV_HEADER;
use commuting_cli::run_with_io;
use commuting_core::report::{curve_from_json, curve_to_json};
use commuting_core::rings::rat;
use commuting_core::SpectralCurve;
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("commuting").chain(args.iter().copied());
    let code = run_with_io(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

fn without_elapsed(s: &str) -> Value {
    let mut v = json(s);
    v.as_object_mut().unwrap().remove("elapsed_ms").expect("elapsed_ms present");
    v
}

#[test]
fn symbolic_cubic_g2_passes_with_normative_fields() {
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "2", "--mode", "symbolic"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    for field in ["identity_id", "mode", "params", "remainder_is_zero", "witness_order", "elapsed_ms", "tool_version", "seed"] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["remainder_is_zero"], Value::Bool(true));
    assert_eq!(v["mode"], "symbolic");
    assert_eq!(v["params"]["a3"], "symbolic");
    assert!(r.out.contains("\"remainder_is_zero\": true"));
}

#[test]
fn uncovered_pair_is_a_usage_error() {
    let r = run(&["verify-theorem", "--g", "7", "--family", "cubic"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("not covered by the paper"), "{}", r.err);
    assert!(r.out.is_empty());
}

#[test]
fn residual_writes_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = run(&[
        "--out-dir", d, "residual", "--family", "cubic", "--g", "2", "--alpha", "0", "0", "0", "1", "--interval", "0", "1",
        "--out", "psi.csv",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let csv = std::fs::read_to_string(dir.path().join("psi.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1002);
    assert_eq!(lines[0], CSV_HEADER);
    // residual column empty within the stencil margin, filled inside
    for (k, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 6);
        let interior = (8..=992).contains(&k);
        assert_eq!(!cols[5].is_empty(), interior, "row {k}: {line}");
    }
    let mid: Vec<f64> = lines[501].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((mid[3] - 6.0 * mid[0] * mid[1]).abs() < 1e-14);
    let v = json(&r.out);
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["max_relative"].as_f64().unwrap() < 1e-6);
}

#[test]
fn residual_covers_complex_roots() {
    let r = run(&["residual", "--family", "cubic", "--g", "2", "--alpha", "0", "1", "0", "1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for root in roots {
        assert!((root["z_im"].as_f64().unwrap().abs() - 12f64.sqrt()).abs() < 1e-12);
        assert!(root["max_relative"].as_f64().unwrap() < 1e-6);
    }
    let r = run(&["residual", "--family", "cubic", "--g", "2", "--alpha", "0", "1", "0", "1", "--root", "2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn tight_threshold_reports_failure() {
    let r = run(&[
        "residual", "--family", "cubic", "--g", "2", "--alpha", "0", "0", "0", "1", "--step", "0.05", "--threshold", "1e-30",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.out)["passed"], Value::Bool(false));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "2", "--frobnicate"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("Usage"), "{}", r.err);
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["verify-theorem", "--family", "septic", "--g", "2"]).code, 2);
    assert_eq!(run(&["verify-theorem", "--family", "cubic", "--g", "2", "--alpha", "1/0"]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("verify-theorem"));
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn unwritable_path_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("r.json");
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("cannot write"), "{}", r.err);
}

#[test]
fn negative_and_fractional_parameters() {
    let r = run(&["verify-theorem", "--family", "cubic", "--alpha", "1", "-2", "3/2", "-1", "--g", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["mode"], "specialized");
    assert_eq!(v["params"]["a1"], "-2");
    assert_eq!(v["params"]["a2"], "3/2");
}

#[test]
fn symbolic_mode_rejects_values() {
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "2", "--mode", "symbolic", "--alpha", "1"]);
    assert_eq!(r.code, 2);
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "2", "--alpha", "1", "2", "3", "4", "5"]);
    assert_eq!(r.code, 2);
}

#[test]
fn quartic_constraint_violation_is_a_usage_error() {
    let r = run(&["verify-theorem", "--family", "quartic", "--g", "1", "--alpha", "0", "1", "1", "1", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("constraint"));
    let r = run(&["verify-theorem", "--family", "quartic", "--g", "1", "--alpha", "0", "1", "1", "1", "0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["verify-theorem", "--family", "quartic", "--g", "2", "--mode", "specialized", "--seed", "17"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0, "{}", a.err);
    assert_eq!(without_elapsed(&a.out), without_elapsed(&b.out));
    let strip = |s: &str| s.lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a.out), strip(&b.out));
    assert_eq!(json(&a.out)["seed"], 17);
    let c = run(&["verify-theorem", "--family", "quartic", "--g", "2", "--mode", "specialized", "--seed", "18"]);
    assert_ne!(json(&a.out)["params"], json(&c.out)["params"]);
}

#[test]
fn seeded_corollary_both_targets() {
    for target in ["l4", "l4g2"] {
        let r = run(&["verify-corollary", "--family", "cubic", "--g", "2", "--alpha", "0", "0", "0", "1", "--target", target]);
        assert_eq!(r.code, 0, "{target}: {}", r.err);
        let v = json(&r.out);
        assert!(v["identity_id"].as_str().unwrap().starts_with(&format!("modL2/{target}/")));
        assert!(v["witness_order"].as_u64().is_some());
    }
    let r = run(&["verify-corollary", "--family", "cubic", "--g", "2", "--seed", "3", "--format", "text"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("PASS modL2/l4/cubic/g2"));
}

#[test]
fn centralizer_and_inconclusive_search() {
    let r = run(&["centralizer", "--family", "cubic", "--g", "1", "--alpha", "0", "0", "0", "1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert_eq!(v["operator_order"], 6);
    assert_eq!(v["commutator_is_zero"], Value::Bool(true));
    let r = run(&["centralizer", "--family", "cubic", "--g", "1", "--alpha", "0", "0", "0", "1", "--degree-bound", "0"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("inconclusive"));
}

#[test]
fn dixmier_curve_is_w2_minus_z3() {
    let r = run(&["spectral-curve", "--family", "cubic", "--g", "1", "--alpha", "0", "0", "0", "1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    let expected: Value = json(r#"{"w^2":"1","z^3":"-1"}"#);
    assert_eq!(v["curve"], expected);
    assert_eq!(v["hyperelliptic_degree"], 3);
    assert_eq!(v["curve_identity_holds"], Value::Bool(true));
}

#[test]
fn curve_serialization_is_exact() {
    let one = rat(1, 1);
    let mut curve = SpectralCurve::term(one.clone(), 0, 2);
    curve.add_term(3, 0, &-one);
    let s = curve_to_json(&curve);
    assert_eq!(s, r#"{"w^2":"1","z^3":"-1"}"#);
    assert_eq!(curve_from_json(&s).unwrap(), curve);
    let map: BTreeMap<String, String> = serde_json::from_str(&s).unwrap();
    assert_eq!(SpectralCurve::from_coefficient_map(&map).unwrap(), curve);
}

#[test]
fn bessel_check_passes_and_rejects_bad_input() {
    let r = run(&["bessel-check", "--alpha0", "0", "--alpha1", "1", "--y-interval", "1", "5"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r.out);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-5);
    assert!(v["min_order"].as_f64().unwrap() >= 4.0);
    assert_eq!(run(&["bessel-check", "--alpha1", "0"]).code, 2);
    assert_eq!(run(&["bessel-check", "--alpha1", "-1"]).code, 2);
    assert_eq!(run(&["bessel-check", "--y-interval", "0", "5"]).code, 2);
}

#[test]
fn report_files_land_in_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = run(&["--out-dir", d, "verify-theorem", "--family", "exponential", "--g", "3", "--eps", "1", "--out", "r.json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.is_empty());
    let v = json(&std::fs::read_to_string(Path::new(d).join("r.json")).unwrap());
    assert_eq!(v["identity_id"], "eigen/exponential/g3/eps1");
}

#[test]
fn text_format() {
    let r = run(&["verify-theorem", "--family", "cubic", "--g", "4", "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("PASS eigen/cubic/g4 (symbolic)"), "{}", r.out);
}

#[test]
fn suite_runs_selected_criteria() {
    let r = run(&["suite", "--only", "1,4"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    assert_eq!(run(&["suite", "--only", "42"]).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_commuting");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify-theorem", "--family", "cubic", "--g", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let uncovered = status(&["verify-theorem", "--g", "7", "--family", "cubic"]);
    assert_eq!(uncovered.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&uncovered.stderr).contains("not covered by the paper"));
    assert_eq!(status(&["--bogus"]).status.code(), Some(2));
}
