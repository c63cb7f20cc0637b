//! The acceptance criteria, each with its time limit, runnable one by one or
//! all together.

pub mod properties;

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use commuting_core::centralizer::find_with_schedule;
use commuting_core::families::{char_poly_z, rational_l4, Family, FamilySpec};
use commuting_core::random::{random_spec, random_squarefree_spec, rng_from_seed};
use commuting_core::rings::rat;
use commuting_core::spectral::hyperelliptic_form;
use commuting_core::verify::{corollary_branches, verify_eigen_identity, CorollaryTarget, Mode};
use commuting_core::Rational;
use commuting_numeric::{
    bessel_change_check, bessel_convergence, eigen_residual, integrate_kernel, numeric_roots, BesselConfig, KernelConfig,
};

/// Below this residual, refinement is limited by the integrator, not the stencil.
pub const ORDER_FLOOR: f64 = 1e-13;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    check: fn(u64) -> Result<String, String>,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s, limit {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "cubic g=2 eigen identity, symbolic", limit: secs(5), check: cubic_g2 },
        Criterion { id: 2, name: "cubic g=4 eigen identity, symbolic", limit: secs(60), check: cubic_g4 },
        Criterion {
            id: 3,
            name: "quartic g=1,2 eigen identity, symbolic and 25 seeded specializations each",
            limit: secs(30),
            check: quartic,
        },
        Criterion {
            id: 4,
            name: "exponential g=1..6, eps=0,1 eigen identity, symbolic",
            limit: secs(10),
            check: exponential,
        },
        Criterion {
            id: 5,
            name: "commutativity modulo L2 with witnesses, seeded cubic g=2 (l4, l10) and g=4 (l4)",
            limit: secs(300),
            check: modulo_l2,
        },
        Criterion { id: 6, name: "Dixmier g=1 partner of order 6 and cubic curve", limit: secs(60), check: dixmier_g1 },
        Criterion { id: 7, name: "Dixmier g=2 partner of order 10 and quintic curve", limit: secs(600), check: dixmier_g2 },
        Criterion { id: 8, name: "finite-difference eigen-residuals below 1e-6", limit: secs(60), check: residuals },
        Criterion {
            id: 9,
            name: "Bessel change of variables: residual below 1e-5, order at least 4",
            limit: secs(60),
            check: bessel,
        },
        Criterion { id: 10, name: "algebraic property suites", limit: secs(600), check: property_suites },
    ]
}

/// Runs the selected criteria (all when `only` is empty), printing one line each.
pub fn run(only: &[u8], seed: u64, out: &mut dyn Write) -> Vec<CriterionResult> {
    let mut results = Vec::new();
    for c in criteria() {
        if !only.is_empty() && !only.contains(&c.id) {
            continue;
        }
        let started = Instant::now();
        let outcome = (c.check)(seed);
        let elapsed = started.elapsed();
        let in_time = elapsed <= c.limit;
        let (ok, mut detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !in_time {
            detail.push_str("; time limit exceeded");
        }
        let result = CriterionResult {
            id: c.id,
            name: c.name,
            passed: ok && in_time,
            elapsed,
            limit: c.limit,
            detail,
        };
        let _ = writeln!(out, "{}", result.line());
        let _ = out.flush();
        results.push(result);
    }
    results
}

fn q(n: i64) -> Rational {
    rat(n, 1)
}

fn dixmier(g: u32) -> FamilySpec {
    FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], g)
}

fn eigen(spec: &FamilySpec, mode: Mode) -> Result<(), String> {
    let report = verify_eigen_identity(spec).map_err(|e| format!("{}: {e}", spec.identity_label()))?;
    if report.mode != mode {
        return Err(format!("{}: ran in {:?} mode", report.identity_id, report.mode));
    }
    if !report.remainder_is_zero {
        return Err(format!("{}: remainder {}", report.identity_id, report.remainder.unwrap_or_default()));
    }
    Ok(())
}

fn cubic_g2(_: u64) -> Result<String, String> {
    eigen(&FamilySpec::symbolic(Family::Cubic, 2), Mode::Symbolic)?;
    Ok("remainder zero modulo z^2 + 4 a2 z + 12 a1 a3".into())
}

fn cubic_g4(_: u64) -> Result<String, String> {
    let spec = FamilySpec::symbolic(Family::Cubic, 4);
    eigen(&spec, Mode::Symbolic)?;
    let chi = char_poly_z(&spec).map_err(|e| e.to_string())?;
    Ok(format!("remainder zero modulo the cubic {chi}"))
}

fn quartic(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed ^ 0x0003);
    for g in [1, 2] {
        eigen(&FamilySpec::symbolic(Family::Quartic, g), Mode::Symbolic)?;
        for _ in 0..25 {
            eigen(&random_spec(&mut rng, Family::Quartic, g), Mode::Specialized)?;
        }
    }
    Ok("2 symbolic runs (a1 eliminated, a4 inverted) and 50 specializations, all zero".into())
}

fn exponential(_: u64) -> Result<String, String> {
    for g in 1..=6 {
        for eps in [0, 1] {
            eigen(&FamilySpec::symbolic(Family::Exponential, g).with_eps(eps), Mode::Symbolic)?;
        }
    }
    Ok("12 remainders zero in the twisted Laurent ring".into())
}

fn branches_ok(spec: &FamilySpec, target: CorollaryTarget, partner: Option<&commuting_core::DiffOp<commuting_core::PolyRing>>) -> Result<usize, String> {
    let branches = corollary_branches(spec, target, partner).map_err(|e| format!("{spec:?}: {e}"))?;
    for b in &branches {
        if !b.remainder_is_zero || b.witness_order.is_none() {
            return Err(format!(
                "{} {} at z = {}: remainder {:?}",
                spec.identity_label(),
                target.name(),
                b.eigenvalue,
                b.remainder
            ));
        }
    }
    Ok(branches.len())
}

fn modulo_l2(seed: u64) -> Result<String, String> {
    let mut rng = rng_from_seed(seed ^ 0x0005);
    let mut count = 0;
    for _ in 0..10 {
        let (spec, _) = random_squarefree_spec(&mut rng, Family::Cubic, 2).map_err(|e| e.to_string())?;
        let l4 = rational_l4(&spec).map_err(|e| e.to_string())?;
        let partner = find_with_schedule(&l4, 2)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{spec:?}: no order-10 partner"))?
            .operator;
        count += branches_ok(&spec, CorollaryTarget::L4, None)?;
        count += branches_ok(&spec, CorollaryTarget::L4g2, Some(&partner))?;
    }
    for _ in 0..10 {
        let (spec, _) = random_squarefree_spec(&mut rng, Family::Cubic, 4).map_err(|e| e.to_string())?;
        count += branches_ok(&spec, CorollaryTarget::L4, None)?;
    }
    Ok(format!("{count} eigenvalue branches, all remainders zero with witnesses reconstructed"))
}

fn dixmier_curve(g: u32) -> Result<String, String> {
    let l4 = rational_l4(&dixmier(g)).map_err(|e| e.to_string())?;
    let found = find_with_schedule(&l4, g)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "no partner found".to_string())?;
    let m = &found.operator;
    let order = 4 * g as usize + 2;
    if m.order() != Some(order) || !m.is_monic() {
        return Err(format!("partner has order {:?}", m.order()));
    }
    if !l4.commutator(m).map_err(|e| e.to_string())?.is_zero() {
        return Err("[L4, M] != 0".into());
    }
    let form = hyperelliptic_form(&l4, m).map_err(|e| e.to_string())?;
    let deg_f = form.f.len().saturating_sub(1);
    let curve = &form.curve;
    if curve.curve.degree_w() != Some(2) || deg_f != 2 * g as usize + 1 {
        return Err(format!("curve {} has deg F = {deg_f}", curve.curve));
    }
    if !curve.operator_identity_holds || !form.square_identity_holds || !curve.characteristic_is_square {
        return Err(format!("curve {} fails an operator identity", curve.curve));
    }
    Ok(format!(
        "order {order} at degree bound {}, curve {} = 0, deg F = {deg_f}",
        found.degree_bound, curve.curve
    ))
}

fn dixmier_g1(_: u64) -> Result<String, String> {
    dixmier_curve(1)
}

fn dixmier_g2(_: u64) -> Result<String, String> {
    dixmier_curve(2)
}

fn residuals(_: u64) -> Result<String, String> {
    let cases = [
        FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 2),
        FamilySpec::specialized(Family::Cubic, &[q(0), q(1), q(0), q(1)], 2),
        FamilySpec::specialized(Family::Exponential, &[q(0), q(1)], 1),
    ];
    let mut parts = Vec::new();
    let mut worst: f64 = 0.0;
    for spec in &cases {
        let chi = char_poly_z(spec).map_err(|e| e.to_string())?;
        let roots = numeric_roots(&chi).map_err(|e| e.to_string())?;
        let grid = integrate_kernel(spec, true, &KernelConfig::default_for(spec.family)).map_err(|e| e.to_string())?;
        if let Some(d) = &grid.diagnostic {
            return Err(format!("{}: {d}", spec.identity_label()));
        }
        let mut distinct: Vec<Complex64> = Vec::new();
        for z in roots {
            if !distinct.iter().any(|w| (w - z).norm() < 1e-12) {
                distinct.push(z);
            }
        }
        for z in distinct {
            let r = eigen_residual(spec, z, &grid).map_err(|e| e.to_string())?.max_relative;
            worst = worst.max(r);
            parts.push(format!("{} z={:.4}{:+.4}i: {r:.1e}", spec.identity_label(), z.re + 0.0, z.im + 0.0));
        }
    }
    let detail = parts.join(", ");
    if worst < 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bessel(_: u64) -> Result<String, String> {
    let cfg = BesselConfig::new(0.0, 1.0, (1.0, 5.0));
    let check = bessel_change_check(&cfg).map_err(|e| e.to_string())?;
    let conv = bessel_convergence(&cfg, 0.2, 3).map_err(|e| e.to_string())?;
    let order = conv.min_order_above(ORDER_FLOOR);
    let orders: Vec<String> = conv.orders.iter().map(|o| format!("{o:.2}")).collect();
    let detail = format!("residual {:.1e} at h = {}, orders [{}]", check.max_residual, cfg.step, orders.join(", "));
    if check.max_residual < 1e-5 && order.is_some_and(|o| o >= 4.0) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn property_suites(seed: u64) -> Result<String, String> {
    let runs = properties::run_all(seed);
    let failures: Vec<String> = runs
        .iter()
        .filter_map(|r| r.failure.as_ref().map(|f| format!("{}: {f}", r.name)))
        .collect();
    if failures.is_empty() {
        let summary: Vec<String> = runs.iter().map(|r| format!("{} x{}", r.name, r.cases)).collect();
        Ok(summary.join(", "))
    } else {
        Err(failures.join("; "))
    }
}
