//! Change of variables `y = 2 sqrt(a1) e^{x/2}`, which turns
//! `(D_x^2 + a1 e^x + a0) phi = 0` into
//! `(y^2 D_y^2 + y D_y + y^2 + 4 a0) phi = 0`.

use crate::dd::{dd, div, exp, ln, to_f64, Dd};
use crate::ode::{integrate, OdeConfig};
use crate::stencil::Stencil;
use crate::{NumericError, Result};

#[derive(Debug, Clone, Copy)]
pub struct BesselConfig {
    pub alpha0: f64,
    pub alpha1: f64,
    pub y_interval: (f64, f64),
    /// Uniform spacing in `y`.
    pub step: f64,
    pub tol: f64,
    pub stencil_order: u32,
}

impl BesselConfig {
    pub fn new(alpha0: f64, alpha1: f64, y_interval: (f64, f64)) -> Self {
        Self {
            alpha0,
            alpha1,
            y_interval,
            step: 1e-2,
            tol: 1e-10,
            stencil_order: 6,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }
}

#[derive(Debug, Clone)]
pub struct BesselOutcome {
    /// Max residual of the `y`-form equation relative to `max |phi|`.
    pub max_residual: f64,
    pub y: Vec<f64>,
    pub phi: Vec<f64>,
}

/// Integrates in `x` with `phi = 1, phi' = 0` at the left end, samples at the
/// images of a uniform `y` grid, and applies the `y`-form operator by finite
/// differences.
pub fn bessel_change_check(cfg: &BesselConfig) -> Result<BesselOutcome> {
    if !(cfg.alpha1 > 0.0) {
        return Err(NumericError::Input(format!("a1 = {} must be positive", cfg.alpha1)));
    }
    let (y0, y1) = cfg.y_interval;
    if !(y0 > 0.0) || !(y1 > y0) || !(cfg.step > 0.0) {
        return Err(NumericError::Input(format!("bad y interval [{y0}, {y1}] or step {}", cfg.step)));
    }
    let st1 = Stencil::first(cfg.stencil_order)?;
    let st2 = Stencil::second(cfg.stencil_order)?;
    let r = st2.radius();
    let m = ((y1 - y0) / cfg.step).round() as usize;
    if m < 2 * r + 1 {
        return Err(NumericError::Input("y grid too short for the stencil".into()));
    }
    let hy = (dd(y1) - dd(y0)) / m as f64;
    let ys: Vec<Dd> = (0..=m).map(|k| dd(y0) + hy * dd(k as f64)).collect();
    let two_root = dd(2.0) * dd(cfg.alpha1).sqrt();
    let xs: Vec<Dd> = ys.iter().map(|&y| dd(2.0) * ln(div(y, two_root))).collect();
    let (a0, a1) = (dd(cfg.alpha0), dd(cfg.alpha1));
    let ode = OdeConfig {
        tol: cfg.tol,
        ..Default::default()
    };
    let sol = integrate(|x, s: &[Dd; 2]| [s[1], -(a1 * exp(x) + a0) * s[0]], xs[0], [dd(1.0), dd(0.0)], &xs, &ode);
    if let Some(d) = sol.diagnostic {
        return Err(NumericError::Integration(d));
    }
    let phi: Vec<Dd> = sol.y.iter().map(|s| s[0]).collect();
    let scale = phi.iter().map(|v| to_f64(v.abs())).fold(0.0, f64::max);
    let four_a0 = dd(4.0) * a0;
    let mut worst: f64 = 0.0;
    for k in r..=m - r {
        let y = ys[k];
        let d1 = st1.apply_real(&phi, k, hy);
        let d2 = st2.apply_real(&phi, k, hy);
        let res = y * y * d2 + y * d1 + (y * y + four_a0) * phi[k];
        worst = worst.max(to_f64(res.abs()) / scale);
    }
    Ok(BesselOutcome {
        max_residual: worst,
        y: ys.iter().map(|&v| to_f64(v)).collect(),
        phi: phi.iter().map(|&v| to_f64(v)).collect(),
    })
}

#[derive(Debug, Clone)]
pub struct Convergence {
    pub steps: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `log2` of successive residual ratios.
    pub orders: Vec<f64>,
}

impl Convergence {
    /// Smallest observed order among refinements whose finer residual is
    /// still above `floor`, or `None` if every refinement hit the floor.
    pub fn min_order_above(&self, floor: f64) -> Option<f64> {
        self.orders
            .iter()
            .zip(self.residuals.iter().skip(1))
            .filter(|(_, &res)| res > floor)
            .map(|(&o, _)| o)
            .reduce(f64::min)
    }
}

/// Residuals on the grid spacings `coarsest, coarsest/2, ...` (`levels` grids).
pub fn bessel_convergence(cfg: &BesselConfig, coarsest: f64, levels: usize) -> Result<Convergence> {
    let mut steps = Vec::with_capacity(levels);
    let mut residuals = Vec::with_capacity(levels);
    for i in 0..levels {
        let h = coarsest / 2f64.powi(i as i32);
        steps.push(h);
        residuals.push(bessel_change_check(&cfg.with_step(h))?.max_residual);
    }
    let orders = residuals.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok(Convergence {
        steps,
        residuals,
        orders,
    })
}
