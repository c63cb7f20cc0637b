//! Eigen-residual of `psi = p phi` with `L4` applied by finite differences.

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use commuting_core::families::{multiplier_p, Multiplier};
use commuting_core::{Family, FamilySpec, MultiPoly, Var};

use crate::dd::{c64_to_cdd, cabs, cpow, dd, exp, from_rational, Cdd, Dd};
use crate::grid::GridFunction;
use crate::kernel::Coefficients;
use crate::stencil::Stencil;
use crate::{NumericError, Result};

pub const STENCIL_ORDER: u32 = 8;
const UNDERFLOW_FLOOR: f64 = 1e-280;

#[derive(Debug, Clone)]
pub struct ResidualOutcome {
    /// `max |L4 psi - z psi| / max |psi|` over interior points.
    pub max_relative: f64,
    pub grid: GridFunction,
}

fn eval_multiplier(p: &MultiPoly, x: Dd, z: Cdd) -> Result<Cdd> {
    let mut acc = Complex::new(dd(0.0), dd(0.0));
    for (m, c) in p.terms() {
        if Var::ALL.iter().any(|&v| v != Var::X && v != Var::Z && m.exp(v) != 0) {
            return Err(NumericError::Input(format!("multiplier still involves parameters: {p}")));
        }
        let (ex, ez) = (m.exp(Var::X), m.exp(Var::Z));
        if ex < 0 || ez < 0 {
            return Err(NumericError::Input(format!("negative exponent in multiplier {p}")));
        }
        let xp = (0..ex).fold(dd(1.0), |acc, _| acc * x);
        acc += cpow(z, ez as u32) * (from_rational(c) * xp);
    }
    Ok(acc)
}

fn multiplier_values(spec: &FamilySpec, xs: &[Dd], z: Cdd) -> Result<Vec<Cdd>> {
    match multiplier_p(spec)? {
        Multiplier::Polynomial(p) => xs.iter().map(|&x| eval_multiplier(&p, x, z)).collect(),
        Multiplier::TPower(k) => {
            let half = dd(k as f64 / 2.0);
            Ok(xs.iter().map(|&x| Complex::new(exp(half * x), dd(0.0))).collect())
        }
    }
}

/// `(D^2 + V) f` at indices `lo..hi`, zero elsewhere.
fn apply_l2(st: &Stencil, c: &Coefficients, f: &[Cdd], xs: &[Dd], h: Dd, lo: usize, hi: usize) -> Vec<Cdd> {
    let mut out = vec![Complex::zero(); f.len()];
    for k in lo..hi {
        out[k] = st.apply(f, k, h) + f[k] * c.potential(xs[k]);
    }
    out
}

/// Forms `psi = p(x, z) phi` on the grid and evaluates `L4 psi - z psi` using
/// the eighth-order second-difference stencil twice. The kernel must be that
/// of the shifted operator in the exponential family.
pub fn eigen_residual(spec: &FamilySpec, z: Complex64, grid: &GridFunction) -> Result<ResidualOutcome> {
    if spec.family == Family::Exponential && !grid.meta.shifted {
        return Err(NumericError::Input("exponential family needs the kernel of the shifted operator".into()));
    }
    let st = Stencil::second(STENCIL_ORDER)?;
    let r = st.radius();
    let n = grid.len();
    if n < 4 * r + 1 {
        return Err(NumericError::Input(format!("grid of {n} points is too short for the stencil")));
    }
    let coeffs = Coefficients::from_spec(spec)?;
    let zd = c64_to_cdd(z);
    let p = multiplier_values(spec, &grid.x, zd)?;
    let psi: Vec<Cdd> = p.iter().zip(&grid.phi).map(|(pk, phi)| *pk * *phi).collect();
    let u = apply_l2(&st, &coeffs, &psi, &grid.x, grid.h, r, n - r);
    let v = apply_l2(&st, &coeffs, &u, &grid.x, grid.h, 2 * r, n - 2 * r);
    let interior = 2 * r..n - 2 * r;
    let scale = interior.clone().map(|k| cabs(psi[k])).fold(0.0, f64::max);
    if !(scale > UNDERFLOW_FLOOR) {
        return Err(NumericError::DegenerateSample(scale));
    }
    let mut pointwise = vec![None; n];
    let mut worst: f64 = 0.0;
    for k in interior {
        let res = v[k] + psi[k] * coeffs.extra(grid.x[k]) - zd * psi[k];
        let rel = cabs(res) / scale;
        worst = worst.max(rel);
        pointwise[k] = Some(rel);
    }
    let mut out = grid.clone();
    out.psi = Some(psi);
    out.residual = Some(pointwise);
    out.meta.z = Some(z);
    Ok(ResidualOutcome {
        max_relative: worst,
        grid: out,
    })
}
