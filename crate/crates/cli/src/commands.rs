use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_traits::ToPrimitive;

use commuting_core::centralizer::{find_commuting_operator, find_with_schedule, Found};
use commuting_core::families::{char_poly_z, rational_l4};
use commuting_core::random::{random_spec, random_squarefree_spec, rng_from_seed};
use commuting_core::report::{report_to_json, report_to_text, CurveReport};
use commuting_core::spectral::hyperelliptic_form;
use commuting_core::verify::{verify_corollary1, verify_eigen_identity, CorollaryTarget};
use commuting_core::{FamilySpec, Rational, TOOL_VERSION};
use commuting_numeric::residual::STENCIL_ORDER;
use commuting_numeric::{
    bessel_change_check, bessel_convergence, eigen_residual, integrate_kernel, numeric_roots, BesselConfig, KernelConfig,
};

use crate::args::{
    BesselArgs, CentralizerArgs, Cli, Command, CorollaryArgs, CurveArgs, FamilyArgs, Format, ModeArg, ResidualArgs,
    SuiteArgs, TargetArg, TheoremArgs,
};
use crate::emit::{self, deliver, BesselReport, CentralizerReport, ResidualReport, RootResidual};
use crate::{acceptance, CliError};

type Outcome = Result<bool, CliError>;

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let dir = cli.out_dir.as_deref();
    match &cli.command {
        Command::VerifyTheorem(a) => verify_theorem(a, dir, out),
        Command::VerifyCorollary(a) => verify_corollary(a, dir, out),
        Command::Centralizer(a) => centralizer(a, dir, out),
        Command::SpectralCurve(a) => spectral_curve(a, dir, out),
        Command::Residual(a) => residual(a, dir, out),
        Command::BesselCheck(a) => bessel_check(a, dir, out),
        Command::Suite(a) => suite(a, out, err),
    }
}

fn elapsed_ms(started: Instant) -> f64 {
    (started.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Spec from explicit coefficients; an error if more are given than the
/// family has.
fn explicit_spec(a: &FamilyArgs) -> Result<FamilySpec, CliError> {
    let family = a.family.into();
    let n = commuting_core::Family::param_count(family);
    if a.alpha.len() > n {
        return Err(CliError::Usage(format!(
            "{family} family takes at most {n} coefficients, got {}",
            a.alpha.len()
        )));
    }
    let spec = FamilySpec::specialized(family, &a.alpha, a.g).with_eps(a.eps);
    spec.validate()?;
    Ok(spec)
}

/// Explicit coefficients, or a seeded random specialization when none are given.
fn specialized_spec(a: &FamilyArgs) -> Result<FamilySpec, CliError> {
    if a.alpha.is_empty() {
        let spec = random_spec(&mut rng_from_seed(a.seed), a.family.into(), a.g).with_eps(a.eps);
        spec.validate()?;
        Ok(spec)
    } else {
        explicit_spec(a)
    }
}

fn verify_theorem(a: &TheoremArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let f = &a.family;
    let mode = a.mode.unwrap_or(if f.alpha.is_empty() { ModeArg::Symbolic } else { ModeArg::Specialized });
    let spec = match mode {
        ModeArg::Symbolic if !f.alpha.is_empty() => {
            return Err(CliError::Usage("--mode symbolic takes no --alpha values".into()))
        }
        ModeArg::Symbolic => {
            let spec = FamilySpec::symbolic(f.family.into(), f.g).with_eps(f.eps);
            spec.validate()?;
            spec
        }
        ModeArg::Specialized => specialized_spec(f)?,
    };
    let report = verify_eigen_identity(&spec)?.with_seed(f.seed);
    let body = match a.output.format {
        Format::Json => report_to_json(&report) + "\n",
        Format::Text => report_to_text(&report) + "\n",
    };
    deliver(&body, a.output.out.as_deref(), dir, out)?;
    Ok(report.remainder_is_zero)
}

fn verify_corollary(a: &CorollaryArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let f = &a.family;
    let spec = if f.alpha.is_empty() {
        random_squarefree_spec(&mut rng_from_seed(f.seed), f.family.into(), f.g)?.0.with_eps(f.eps)
    } else {
        explicit_spec(f)?
    };
    let target = match a.target {
        TargetArg::L4 => CorollaryTarget::L4,
        TargetArg::L4g2 => CorollaryTarget::L4g2,
    };
    let report = verify_corollary1(&spec, target, None)?.with_seed(f.seed);
    let body = match a.output.format {
        Format::Json => report_to_json(&report) + "\n",
        Format::Text => report_to_text(&report) + "\n",
    };
    deliver(&body, a.output.out.as_deref(), dir, out)?;
    Ok(report.remainder_is_zero)
}

fn partner(spec: &FamilySpec, degree_bound: Option<usize>) -> Result<Found, CliError> {
    let l4 = rational_l4(spec)?;
    let order = 4 * spec.g as usize + 2;
    let found = match degree_bound {
        Some(d) => find_commuting_operator(&l4, order, d)?,
        None => find_with_schedule(&l4, spec.g)?,
    };
    found.ok_or_else(|| {
        let bounds = degree_bound.map_or("the degree schedule".to_string(), |d| format!("degree bound {d}"));
        CliError::Failed(format!("inconclusive: no monic operator of order {order} found within {bounds}"))
    })
}

fn centralizer(a: &CentralizerArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let spec = specialized_spec(&a.family)?;
    let found = partner(&spec, a.degree_bound)?;
    let l4 = rational_l4(&spec)?;
    let commutator_is_zero = l4.commutator(&found.operator)?.is_zero();
    let report = CentralizerReport {
        identity_id: format!("centralizer/{}", spec.identity_label()),
        params: spec.param_strings(),
        operator_order: found.operator.order().unwrap_or(0),
        degree_bound: found.degree_bound,
        solution_dim: found.solution_dim,
        operator: found.operator.to_string(),
        commutator_is_zero,
        elapsed_ms: elapsed_ms(started),
        tool_version: TOOL_VERSION.to_string(),
        seed: Some(a.family.seed),
    };
    let body = match a.output.format {
        Format::Json => emit::to_json(&report),
        Format::Text => emit::centralizer_text(&report),
    };
    deliver(&body, a.output.out.as_deref(), dir, out)?;
    Ok(commutator_is_zero)
}

fn spectral_curve(a: &CurveArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let spec = specialized_spec(&a.family)?;
    let found = partner(&spec, None)?;
    let l4 = rational_l4(&spec)?;
    let form = hyperelliptic_form(&l4, &found.operator)?;
    let commutator_is_zero = l4.commutator(&form.operator)?.is_zero();
    let report = CurveReport {
        identity_id: format!("curve/{}", spec.identity_label()),
        params: spec.param_strings(),
        operator_order: form.operator.order().unwrap_or(0),
        degree_bound: found.degree_bound,
        curve: form.curve.curve.to_coefficient_map(),
        hyperelliptic_degree: form.f.len().checked_sub(1),
        commutator_is_zero,
        curve_identity_holds: form.curve.operator_identity_holds && form.square_identity_holds,
        characteristic_is_square: form.curve.characteristic_is_square,
        elapsed_ms: elapsed_ms(started),
        tool_version: TOOL_VERSION.to_string(),
        seed: Some(a.family.seed),
    };
    let passed = report.commutator_is_zero && report.curve_identity_holds && report.characteristic_is_square;
    let body = match a.output.format {
        Format::Json => emit::to_json(&report),
        Format::Text => format!(
            "{} {}: {} = 0, F of degree {}\n",
            emit::verdict(passed),
            report.identity_id,
            form.curve.curve,
            report.hyperelliptic_degree.map_or("-".into(), |d| d.to_string())
        ),
    };
    deliver(&body, a.output.out.as_deref(), dir, out)?;
    Ok(passed)
}

fn residual(a: &ResidualArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let spec = specialized_spec(&a.family)?;
    let mut cfg = KernelConfig::default_for(spec.family);
    if let Some(iv) = &a.interval {
        cfg.interval = (iv[0], iv[1]);
    }
    if let Some(init) = &a.init {
        cfg.init = (init[0], init[1]);
    }
    cfg.step = a.step;
    cfg.tol = a.tol;
    let chi = char_poly_z(&spec)?;
    let roots = numeric_roots(&chi)?;
    if a.root >= roots.len() {
        return Err(CliError::Usage(format!("--root {} out of range: {} eigenvalues", a.root, roots.len())));
    }
    let grid = integrate_kernel(&spec, true, &cfg)?;
    let mut per_root = Vec::with_capacity(roots.len());
    let mut chosen = None;
    for (k, z) in roots.iter().enumerate() {
        let outcome = eigen_residual(&spec, *z, &grid)?;
        per_root.push(RootResidual {
            z_re: z.re + 0.0,
            z_im: z.im + 0.0,
            max_relative: outcome.max_relative,
        });
        if k == a.root {
            chosen = Some(outcome.grid);
        }
    }
    let max_relative = per_root.iter().map(|r| r.max_relative).fold(0.0, f64::max);
    let passed = grid.diagnostic.is_none() && per_root.iter().all(|r| r.max_relative < a.threshold);
    if let Some(path) = &a.out {
        let csv = emit::grid_to_csv(chosen.as_ref().expect("root index checked"));
        deliver(&csv, Some(path), dir, out)?;
    }
    let report = ResidualReport {
        identity_id: format!("residual/{}", spec.identity_label()),
        params: spec.param_strings(),
        interval: cfg.interval,
        step: grid.step(),
        tol: cfg.tol,
        stencil_order: STENCIL_ORDER,
        threshold: a.threshold,
        roots: per_root,
        max_relative,
        passed,
        diagnostic: grid.diagnostic.clone(),
        elapsed_ms: elapsed_ms(started),
        tool_version: TOOL_VERSION.to_string(),
        seed: Some(a.family.seed),
    };
    let body = match a.format {
        Format::Json => emit::to_json(&report),
        Format::Text => emit::residual_text(&report),
    };
    deliver(&body, a.report.as_deref(), dir, out)?;
    Ok(passed)
}

fn rational_to_f64(q: &Rational, name: &str) -> Result<f64, CliError> {
    q.to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("{name} = {q} is not representable as a double")))
}

fn bessel_check(a: &BesselArgs, dir: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let alpha0 = rational_to_f64(&a.alpha0, "a0")?;
    let alpha1 = rational_to_f64(&a.alpha1, "a1")?;
    let y_interval = (a.y_interval[0], a.y_interval[1]);
    let cfg = BesselConfig {
        step: a.step,
        tol: a.tol,
        ..BesselConfig::new(alpha0, alpha1, y_interval)
    };
    let check = bessel_change_check(&cfg)?;
    let conv = bessel_convergence(&cfg, a.coarsest, a.levels)?;
    let min_order = conv.min_order_above(acceptance::ORDER_FLOOR).unwrap_or(f64::NAN);
    let passed = check.max_residual < a.threshold && min_order >= a.min_order;
    let mut params = std::collections::BTreeMap::new();
    params.insert("a0".to_string(), a.alpha0.to_string());
    params.insert("a1".to_string(), a.alpha1.to_string());
    let report = BesselReport {
        identity_id: format!("bessel/a0={}/a1={}", a.alpha0, a.alpha1),
        params,
        y_interval,
        step: cfg.step,
        tol: cfg.tol,
        max_residual: check.max_residual,
        threshold: a.threshold,
        refinement_steps: conv.steps,
        refinement_residuals: conv.residuals,
        observed_orders: conv.orders,
        min_order,
        passed,
        elapsed_ms: elapsed_ms(started),
        tool_version: TOOL_VERSION.to_string(),
        seed: None,
    };
    let body = match a.output.format {
        Format::Json => emit::to_json(&report),
        Format::Text => emit::bessel_text(&report),
    };
    deliver(&body, a.output.out.as_deref(), dir, out)?;
    Ok(passed)
}

fn suite(a: &SuiteArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let known: Vec<u8> = acceptance::criteria().iter().map(|c| c.id).collect();
    if let Some(bad) = a.only.iter().find(|id| !known.contains(id)) {
        return Err(CliError::Usage(format!("unknown criterion {bad}; known: {known:?}")));
    }
    let results = acceptance::run(&a.only, a.seed, out);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if !failed.is_empty() {
        let _ = writeln!(err, "failed criteria: {failed:?}");
    }
    Ok(failed.is_empty())
}
