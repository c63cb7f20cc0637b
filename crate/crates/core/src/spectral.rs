//! Spectral curves of commuting pairs through the action of `M` on the formal
//! eigenspace `ker(L - z)`.

use num_traits::Zero;

use crate::curve::SpectralCurve;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::rings::{MultiPoly, PolyRing, Rational, Var};
use crate::series::{apply_to_series, factorial, falling, PowerSeries};

/// Power-series basis `psi_0, ..., psi_{n-1}` of `(L - z) psi = 0` at `x = 0`
/// with `psi_j = x^j / j! + O(x^n)`, coefficients polynomial in `z`, known
/// modulo `x^truncation`.
pub fn series_kernel_basis(l: &DiffOp<PolyRing>, truncation: usize) -> Result<Vec<PowerSeries>> {
    let n = match l.order() {
        Some(n) if n > 0 && l.is_monic() => n,
        _ => return Err(Error::BadOperator("kernel basis needs a monic operator of positive order".into())),
    };
    if truncation < n {
        return Err(Error::InsufficientTruncation { needed: n, have: truncation });
    }
    // (i, m, a_{i,m}) for every term a_{i,m} x^m D^i except the leading D^n.
    let mut terms: Vec<(usize, usize, MultiPoly)> = Vec::new();
    for (i, a) in l.coeffs().iter().enumerate() {
        for (m, c) in a.coefficients_in(Var::X)?.into_iter().enumerate() {
            if !c.is_zero() && !(i == n && m == 0) {
                terms.push((i, m, c));
            }
        }
    }
    let z = MultiPoly::var(Var::Z);
    let mut basis = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = vec![MultiPoly::zero(); truncation];
        c[j] = MultiPoly::constant(factorial(j).recip());
        for k in 0..truncation - n {
            // coefficient of x^k in (L - z) psi, without the leading term
            let mut acc = -&(&z * &c[k]);
            for (i, m, a) in &terms {
                if *m > k {
                    continue;
                }
                let idx = k - m + i;
                if !c[idx].is_zero() {
                    acc = &acc + &(a * &c[idx].scale(&falling(idx, *i)));
                }
            }
            c[k + n] = (-&acc).scale(&falling(k + n, n).recip());
        }
        basis.push(PowerSeries::new(c, truncation));
    }
    Ok(basis)
}

/// `A[i][j] = i! [x^i] (M psi_j)`: the Taylor data at 0 of `M psi_j`, which
/// are its coordinates in the basis.
pub fn action_matrix(m: &DiffOp<PolyRing>, basis: &[PowerSeries]) -> Result<Vec<Vec<MultiPoly>>> {
    let n = basis.len();
    let order = m.order().unwrap_or(0);
    let mut cols = Vec::with_capacity(n);
    for psi in basis {
        if psi.truncation() < order + n {
            return Err(Error::InsufficientTruncation {
                needed: order + n,
                have: psi.truncation(),
            });
        }
        let image = apply_to_series(m, psi)?;
        cols.push((0..n).map(|i| image.taylor_datum(i)).collect::<Vec<_>>());
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

fn z_poly_to_curve(p: &MultiPoly) -> Result<SpectralCurve> {
    let coeffs = p
        .coefficients_in(Var::Z)?
        .iter()
        .map(|c| {
            c.as_constant()
                .ok_or_else(|| Error::BadOperator(format!("matrix entry {p} is not a rational polynomial in z")))
        })
        .collect::<Result<Vec<Rational>>>()?;
    Ok(SpectralCurve::from_z_poly(&coeffs))
}

fn determinant(m: &[Vec<SpectralCurve>]) -> SpectralCurve {
    let n = m.len();
    if n == 0 {
        return SpectralCurve::constant(Rational::from_integer(1.into()));
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = SpectralCurve::zero();
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<SpectralCurve>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * &determinant(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `det(w I - A(z))`.
pub fn characteristic_polynomial(a: &[Vec<MultiPoly>]) -> Result<SpectralCurve> {
    let n = a.len();
    let mut m = Vec::with_capacity(n);
    for (i, row) in a.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            let mut entry = -&z_poly_to_curve(e)?;
            if i == j {
                entry = &entry + &SpectralCurve::w();
            }
            out.push(entry);
        }
        m.push(out);
    }
    Ok(determinant(&m))
}

/// Spectral curve of a commuting pair and the checks performed on it.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveResult {
    pub curve: SpectralCurve,
    pub characteristic: SpectralCurve,
    pub truncation: usize,
    /// `R(L4, M) = 0` as an operator identity.
    pub operator_identity_holds: bool,
    /// `det(w I - A) = R^2`.
    pub characteristic_is_square: bool,
}

impl CurveResult {
    /// `F` when the curve is `w^2 - F(z)`.
    pub fn hyperelliptic_f(&self) -> Option<Vec<Rational>> {
        self.curve.hyperelliptic_f()
    }
}

/// Action matrix of `m` on the kernel basis of `l4 - z` at the given truncation.
pub fn action_matrix_at(l4: &DiffOp<PolyRing>, m: &DiffOp<PolyRing>, truncation: usize) -> Result<Vec<Vec<MultiPoly>>> {
    let basis = series_kernel_basis(l4, truncation)?;
    action_matrix(m, &basis)
}

/// Squarefree, normalized `det(w I - A)` for a commuting pair, with the
/// action matrix recomputed at truncation `N + 8` as a consistency check and
/// the curve verified as an operator identity.
pub fn spectral_curve(l4: &DiffOp<PolyRing>, m: &DiffOp<PolyRing>) -> Result<CurveResult> {
    if !l4.commutator(m)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let n = l4.order().unwrap_or(0);
    let truncation = m.order().unwrap_or(0) + n + 8;
    let a = action_matrix_at(l4, m, truncation)?;
    if action_matrix_at(l4, m, truncation + 8)? != a {
        return Err(Error::TruncationInconsistency);
    }
    let characteristic = characteristic_polynomial(&a)?;
    let curve = characteristic.squarefree_part()?.normalized();
    let operator_identity_holds = curve.eval_at_operators(l4, m)?.is_zero();
    let characteristic_is_square = curve.pow(2) == characteristic;
    Ok(CurveResult {
        curve,
        characteristic,
        truncation,
        operator_identity_holds,
        characteristic_is_square,
    })
}

/// A commuting pair brought to the form `w^2 = F(z)` by shifting `M` with a
/// polynomial in `L4`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellipticForm {
    /// `M + s(L4)`.
    pub operator: DiffOp<PolyRing>,
    /// The shift `s(z)`, ascending coefficients.
    pub shift: Vec<Rational>,
    /// `F(z)`, ascending coefficients.
    pub f: Vec<Rational>,
    pub curve: CurveResult,
    /// `(M + s(L4))^2 = F(L4)` as operators.
    pub square_identity_holds: bool,
}

/// `p(L)` for ascending rational coefficients.
pub fn poly_of_operator(p: &[Rational], l: &DiffOp<PolyRing>) -> Result<DiffOp<PolyRing>> {
    let mut acc = DiffOp::zero(*l.ring());
    let mut power = DiffOp::one(*l.ring());
    for (k, c) in p.iter().enumerate() {
        if k > 0 {
            power = power.compose(l)?;
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale(c))?;
        }
    }
    Ok(acc)
}

/// Completes the square: for a curve `w^2 + a(z) w + b(z)` the operator
/// `M + a(L4)/2` has curve `w^2 - F(z)`. The curve of the shifted operator is
/// recomputed from scratch.
pub fn hyperelliptic_form(l4: &DiffOp<PolyRing>, m: &DiffOp<PolyRing>) -> Result<HyperellipticForm> {
    let first = spectral_curve(l4, m)?;
    let cs = first.curve.w_coefficients();
    if cs.len() != 3 || cs[2].len() != 1 {
        return Err(Error::BadOperator(format!("curve {} is not monic quadratic in w", first.curve)));
    }
    let half = Rational::new(1.into(), 2.into());
    let shift: Vec<Rational> = cs[1].iter().map(|c| c * &half).collect();
    let operator = m.add(&poly_of_operator(&shift, l4)?)?;
    let curve = spectral_curve(l4, &operator)?;
    let f = curve
        .hyperelliptic_f()
        .ok_or_else(|| Error::Internal(format!("shifted curve {} still has a w term", curve.curve)))?;
    let square_identity_holds = operator.pow(2).sub(&poly_of_operator(&f, l4)?)?.is_zero();
    Ok(HyperellipticForm {
        operator,
        shift,
        f,
        curve,
        square_identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::find_with_schedule;
    use crate::families::{rational_l4, Family, FamilySpec};
    use crate::rings::rat;

    fn ring() -> PolyRing {
        PolyRing::new()
    }

    #[test]
    fn d4_at_z_zero() {
        let basis = series_kernel_basis(&DiffOp::d_pow(ring(), 4), 12).unwrap();
        for (j, psi) in basis.iter().enumerate() {
            let at_zero: Vec<MultiPoly> = psi
                .coeffs()
                .iter()
                .map(|c| c.substitute(Var::Z, &MultiPoly::zero()).unwrap())
                .collect();
            let mut expected = vec![MultiPoly::zero(); 12];
            expected[j] = MultiPoly::constant(factorial(j).recip());
            assert_eq!(at_zero, expected);
        }
    }

    #[test]
    fn d4_recurrence_oracle() {
        let basis = series_kernel_basis(&DiffOp::d_pow(ring(), 4), 13).unwrap();
        // c_{k+4} = z c_k k! / (k+4)!
        let mut c = vec![MultiPoly::zero(); 13];
        c[0] = MultiPoly::one();
        for k in 0..9 {
            let f = factorial(k) / factorial(k + 4);
            c[k + 4] = (&MultiPoly::var(Var::Z) * &c[k]).scale(&f);
        }
        assert_eq!(basis[0].coeffs(), &c[..]);
        assert_eq!(basis[0].coeff(4), &MultiPoly::var(Var::Z).scale(&rat(1, 24)));
    }

    #[test]
    fn basis_is_annihilated() {
        let spec = FamilySpec::specialized(Family::Cubic, &[rat(1, 2), rat(-1, 1), rat(0, 1), rat(1, 1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let lz = l4
            .sub(&DiffOp::scalar(ring(), MultiPoly::var(Var::Z)))
            .unwrap();
        for psi in series_kernel_basis(&l4, 20).unwrap() {
            let out = apply_to_series(&lz, &psi).unwrap();
            assert!(out.coeffs().iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn identity_and_l4_actions() {
        let spec = FamilySpec::specialized(Family::Cubic, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let basis = series_kernel_basis(&l4, 16).unwrap();
        let id = action_matrix(&DiffOp::one(ring()), &basis).unwrap();
        let a = action_matrix(&l4, &basis).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let delta = if i == j { MultiPoly::one() } else { MultiPoly::zero() };
                assert_eq!(id[i][j], delta);
                assert_eq!(a[i][j], &delta * &MultiPoly::var(Var::Z));
            }
        }
    }

    #[test]
    fn degenerate_pair_gives_diagonal_line() {
        let spec = FamilySpec::specialized(Family::Cubic, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let res = spectral_curve(&l4, &l4).unwrap();
        assert_eq!(res.curve, &SpectralCurve::w() - &SpectralCurve::z());
        assert!(res.operator_identity_holds);
        assert_eq!(res.characteristic, res.curve.pow(4));
    }

    #[test]
    fn dixmier_curve() {
        let spec = FamilySpec::specialized(Family::Cubic, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let m = find_with_schedule(&l4, 1).unwrap().unwrap().operator;
        let res = spectral_curve(&l4, &m).unwrap();
        assert!(res.operator_identity_holds);
        assert!(res.characteristic_is_square);
        let form = hyperelliptic_form(&l4, &m).unwrap();
        assert_eq!(form.f.len(), 4);
        assert!(form.square_identity_holds);
    }

    #[test]
    fn truncation_too_small() {
        let l4 = DiffOp::d_pow(ring(), 4);
        assert!(matches!(
            series_kernel_basis(&l4, 3),
            Err(Error::InsufficientTruncation { .. })
        ));
        let basis = series_kernel_basis(&l4, 6).unwrap();
        assert!(matches!(
            action_matrix(&DiffOp::d_pow(ring(), 6), &basis),
            Err(Error::InsufficientTruncation { .. })
        ));
    }
}
