//! Kernel of the second-order operator, `phi'' = -V(x) phi`.

use commuting_core::{Family, FamilySpec};

use crate::dd::{dd, exp, from_rational, to_f64, Dd};
use crate::grid::{GridFunction, GridMeta};
use crate::ode::{integrate, OdeConfig};
use crate::{NumericError, Result};

#[derive(Debug, Clone, Copy)]
pub struct KernelConfig {
    pub init: (f64, f64),
    pub interval: (f64, f64),
    /// Requested output spacing; rounded so the interval holds a whole number of steps.
    pub step: f64,
    pub tol: f64,
}

impl KernelConfig {
    pub fn new(interval: (f64, f64), step: f64, tol: f64) -> Self {
        Self {
            init: (1.0, 0.0),
            interval,
            step,
            tol,
        }
    }

    /// Unit interval for the polynomial families, `[0, 2]` for the exponential one.
    pub fn default_for(family: Family) -> Self {
        let b = if family == Family::Exponential { 2.0 } else { 1.0 };
        Self::new((0.0, b), 1e-3, 1e-10)
    }
}

/// Numeric coefficients of a fully specialized family.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub family: Family,
    pub alpha: Vec<Dd>,
    pub g: u32,
    pub eps: u8,
}

impl Coefficients {
    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.family.param_count();
        let alpha = spec.alpha[..n]
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.as_ref()
                    .map(from_rational)
                    .ok_or_else(|| NumericError::Input(format!("a{i} must be a number for the numeric check")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            family: spec.family,
            alpha,
            g: spec.g,
            eps: spec.eps,
        })
    }

    fn gg(&self) -> Dd {
        dd(f64::from(self.g) * f64::from(self.g + 1))
    }

    /// `V(x)` of the unshifted operator `D^2 + V`.
    pub fn potential(&self, x: Dd) -> Dd {
        match self.family {
            Family::Exponential => self.alpha[1] * exp(x) + self.alpha[0],
            _ => self.alpha.iter().rev().fold(dd(0.0), |acc, a| acc * x + *a),
        }
    }

    /// Constant added to `V` by the exponential-family shift.
    pub fn shift(&self) -> Dd {
        let s = f64::from(self.g) + f64::from(self.eps);
        dd(s * s / 4.0)
    }

    /// Order-zero term with `L4 = L2^2 + extra`.
    pub fn extra(&self, x: Dd) -> Dd {
        let a = &self.alpha;
        match self.family {
            Family::Cubic => self.gg() * a[3] * x,
            Family::Quartic => dd(2.0) * self.gg() * x * (a[3] + dd(2.0) * a[4] * x),
            Family::Exponential => self.gg() * a[1] * exp(x),
        }
    }
}

fn uniform(a: f64, b: f64, step: f64) -> Result<(Vec<Dd>, Dd)> {
    if !(step > 0.0) || !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(NumericError::Input(format!("bad grid [{a}, {b}] with step {step}")));
    }
    let m = ((b - a) / step).round().max(1.0) as usize;
    let h = (dd(b) - dd(a)) / m as f64;
    Ok(((0..=m).map(|k| dd(a) + h * dd(k as f64)).collect(), h))
}

/// Integrates `(D^2 + V) phi = 0` (with `V` shifted when `shifted` is set, in
/// the exponential family) and samples `phi, phi'` on a uniform grid.
pub fn integrate_kernel(spec: &FamilySpec, shifted: bool, cfg: &KernelConfig) -> Result<GridFunction> {
    if !(cfg.tol > 0.0) {
        return Err(NumericError::Input("tolerance must be positive".into()));
    }
    let coeffs = Coefficients::from_spec(spec)?;
    let shift = if shifted && spec.family == Family::Exponential { coeffs.shift() } else { dd(0.0) };
    let (xs, h) = uniform(cfg.interval.0, cfg.interval.1, cfg.step)?;
    let ode = OdeConfig {
        tol: cfg.tol,
        ..Default::default()
    };
    let sol = integrate(
        |x, y: &[Dd; 2]| [y[1], -(coeffs.potential(x) + shift) * y[0]],
        xs[0],
        [dd(cfg.init.0), dd(cfg.init.1)],
        &xs,
        &ode,
    );
    let n = sol.t.len();
    Ok(GridFunction {
        x: sol.t,
        h,
        phi: sol.y.iter().map(|y| y[0]).collect(),
        dphi: sol.y.iter().map(|y| y[1]).collect(),
        psi: None,
        residual: None,
        meta: GridMeta {
            family: spec.family,
            g: spec.g,
            eps: spec.eps,
            params: spec.param_strings(),
            shifted,
            z: None,
        },
        diagnostic: sol.diagnostic.or_else(|| {
            (n < xs.len()).then(|| format!("integration stopped at x = {:.6e}", to_f64(xs[n.saturating_sub(1)])))
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use commuting_core::rings::rat;
    use commuting_core::Rational;

    fn spec(values: &[i64]) -> FamilySpec {
        let v: Vec<Rational> = values.iter().map(|&n| rat(n, 1)).collect();
        FamilySpec::specialized(Family::Cubic, &v, 2)
    }

    #[test]
    fn grid_has_whole_number_of_steps() {
        let (xs, h) = uniform(0.0, 1.0, 1e-3).unwrap();
        assert_eq!(xs.len(), 1001);
        assert_eq!(to_f64(xs[1000]), 1.0);
        assert!((to_f64(h) - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn rejects_symbolic_parameters() {
        let s = FamilySpec::symbolic(Family::Cubic, 2);
        assert!(integrate_kernel(&s, false, &KernelConfig::default_for(Family::Cubic)).is_err());
    }

    #[test]
    fn potential_is_horner() {
        let c = Coefficients::from_spec(&spec(&[1, 2, 3, 4])).unwrap();
        assert_eq!(to_f64(c.potential(dd(2.0))), 1.0 + 4.0 + 12.0 + 32.0);
        assert_eq!(to_f64(c.extra(dd(0.5))), 6.0 * 4.0 * 0.5);
    }
}
