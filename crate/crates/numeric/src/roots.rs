use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use commuting_core::rings::{Rationals, UniPolyRing};
use commuting_core::DiffRing;
use commuting_core::{CharPoly, Rational};

use crate::{NumericError, Result};

const NEWTON_STEPS: usize = 50;

/// Yun's squarefree factorization over the rationals: `p = lc * prod s_i^i`,
/// returned as `(s_i, i)` with each `s_i` monic and of positive degree.
fn squarefree_factors(p: &[Rational]) -> Result<Vec<(Vec<Rational>, usize)>> {
    let ring = UniPolyRing::new(Rationals);
    let fail = || NumericError::Input("polynomial arithmetic failed".into());
    let dp = ring.derive(&p.to_vec());
    let a0 = ring.gcd(p, &dp).ok_or_else(fail)?;
    let mut b = ring.div_rem(p, &a0).ok_or_else(fail)?.0;
    let mut c = ring.div_rem(&dp, &a0).ok_or_else(fail)?.0;
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let d = ring.sub(&c, &ring.derive(&b));
        if b.len() <= 1 {
            break;
        }
        let a = ring.gcd(&b, &d).ok_or_else(fail)?;
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = ring.div_rem(&b, &a).ok_or_else(fail)?.0;
        c = ring.div_rem(&d, &a).ok_or_else(fail)?.0;
        i += 1;
    }
    Ok(out)
}

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

fn simple_roots(monic: &[Rational]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let coeffs: Vec<Complex64> = monic.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i].re;
    }
    let eig = companion.complex_eigenvalues();
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..NEWTON_STEPS {
                let (v, d) = horner(&coeffs, z);
                if v.norm() == 0.0 || d.norm() == 0.0 {
                    break;
                }
                let next = z - v / d;
                if (next - z).norm() <= 1e-17 * next.norm().max(1.0) {
                    z = next;
                    break;
                }
                z = next;
            }
            z
        })
        .collect()
}

/// All complex roots of a rational eigenvalue polynomial of degree 1 to 3,
/// with multiplicity, ordered by real then imaginary part.
pub fn numeric_roots(chi: &CharPoly) -> Result<Vec<Complex64>> {
    let coeffs = chi
        .rational_coeffs()
        .ok_or_else(|| NumericError::Input("eigenvalue polynomial has symbolic coefficients".into()))?;
    let deg = coeffs.len().saturating_sub(1);
    if !(1..=3).contains(&deg) {
        return Err(NumericError::Input(format!("degree {deg} outside 1..=3")));
    }
    let mut out = Vec::with_capacity(deg);
    for (factor, mult) in squarefree_factors(&coeffs)? {
        for z in simple_roots(&factor) {
            out.extend(std::iter::repeat_n(z, mult));
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// `|chi(z)|` relative to the largest coefficient magnitude.
pub fn relative_residual(chi: &CharPoly, z: Complex64) -> Option<f64> {
    let coeffs = chi.rational_coeffs()?;
    let scale = coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(0.0)).fold(0.0, f64::max);
    let c: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    Some(horner(&c, z).0.norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use commuting_core::rings::rat;
    use commuting_core::MultiPoly;

    fn poly(c: &[i64]) -> CharPoly {
        CharPoly {
            coeffs: c.iter().map(|&n| MultiPoly::int(n)).collect(),
        }
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (z - 1)^2 (z + 2) = z^3 - 3 z + 2
        let f = squarefree_factors(&[rat(2, 1), rat(-3, 1), rat(0, 1), rat(1, 1)]).unwrap();
        assert_eq!(f, vec![(vec![rat(2, 1), rat(1, 1)], 1), (vec![rat(-1, 1), rat(1, 1)], 2)]);
    }

    #[test]
    fn double_root_is_exact() {
        let roots = numeric_roots(&poly(&[2, -3, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
        assert!((roots[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(roots[1], roots[2]);
    }

    #[test]
    fn degree_is_checked() {
        assert!(numeric_roots(&poly(&[1, 0, 0, 0, 1])).is_err());
        assert!(numeric_roots(&poly(&[1])).is_err());
    }
}
