//! Commuting partners of a rational fourth-order operator, found by solving
//! `[L4, M] = 0` for an ansatz `M = sum c_ij x^j D^i` with exact linear algebra.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseMatrix};
use crate::rings::{Monomial, MultiPoly, PolyRing, Rational, Var};

/// A commuting operator together with the degree bound that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Found {
    pub operator: DiffOp<PolyRing>,
    pub degree_bound: usize,
    /// Dimension of the solution space of the ansatz system.
    pub solution_dim: usize,
}

/// Coefficients of an operator with rational polynomial coefficients, as a
/// map `(order, power of x) -> coefficient`.
fn coefficient_map(op: &DiffOp<PolyRing>) -> Result<BTreeMap<(usize, usize), Rational>> {
    let mut out = BTreeMap::new();
    for (i, a) in op.coeffs().iter().enumerate() {
        for (mono, c) in a.terms() {
            let j = mono.exp(Var::X);
            if j < 0 || mono.total_degree() != j {
                return Err(Error::BadOperator(format!("coefficient {a} is not a rational polynomial in x")));
            }
            out.insert((i, j as usize), c.clone());
        }
    }
    Ok(out)
}

fn check_rational(l4: &DiffOp<PolyRing>) -> Result<()> {
    if !l4.is_monic() {
        return Err(Error::BadOperator("operator must be monic".into()));
    }
    coefficient_map(l4).map(|_| ())
}

fn basis_op(ring: &PolyRing, i: usize, j: usize) -> DiffOp<PolyRing> {
    let mut coeffs = vec![MultiPoly::zero(); i + 1];
    coeffs[i] = MultiPoly::var_pow(Var::X, j as i32);
    DiffOp::new(*ring, coeffs)
}

fn from_vector(ring: &PolyRing, v: &[Rational], order: usize, d: usize) -> DiffOp<PolyRing> {
    let coeffs = (0..=order)
        .map(|i| {
            MultiPoly::from_terms(
                (0..=d)
                    .filter(|&j| !v[i * (d + 1) + j].is_zero())
                    .map(|j| (Monomial::var(Var::X, j as i32), v[i * (d + 1) + j].clone())),
            )
        })
        .collect();
    DiffOp::new(*ring, coeffs)
}

/// Subtracts multiples of `L4^k`, `k = g, ..., 0`, so that the coefficient of
/// `D^(4k)` has zero constant term for every `k`.
pub fn gauge_normalize(l4: &DiffOp<PolyRing>, m: &DiffOp<PolyRing>) -> Result<DiffOp<PolyRing>> {
    let step = l4.order().unwrap_or(0);
    let Some(order) = m.order() else {
        return Ok(m.clone());
    };
    if step == 0 {
        return Ok(m.clone());
    }
    let mut out = m.clone();
    for k in (0..=order / step).rev() {
        let c = out.coeff(k * step).constant_term();
        if !c.is_zero() {
            out = out.sub(&l4.pow(k as u32).scale(&c))?;
        }
    }
    Ok(out)
}

/// Linear system `[l4, sum c_ij x^j D^i] = 0` in the unknowns `c_ij`, column
/// `i (d + 1) + j`, one row per coefficient of `x^k D^l` in the commutator.
pub fn ansatz_system(l4: &DiffOp<PolyRing>, order: usize, degree_bound: usize) -> Result<SparseMatrix> {
    check_rational(l4)?;
    let ring = *l4.ring();
    let d = degree_bound;
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
    for i in 0..=order {
        for j in 0..=d {
            let col = i * (d + 1) + j;
            let comm = l4.commutator(&basis_op(&ring, i, j))?;
            for (key, c) in coefficient_map(&comm)? {
                rows.entry(key).or_default().insert(col, c);
            }
        }
    }
    let mut matrix = SparseMatrix::new((order + 1) * (d + 1));
    for (_, row) in rows {
        matrix.push_row(row);
    }
    Ok(matrix)
}

/// Coordinates of `op` in the ansatz, if it fits.
pub fn ansatz_coordinates(op: &DiffOp<PolyRing>, order: usize, degree_bound: usize) -> Result<Option<Vec<Rational>>> {
    let d = degree_bound;
    let mut v = vec![Rational::zero(); (order + 1) * (d + 1)];
    for ((i, j), c) in coefficient_map(op)? {
        if i > order || j > d {
            return Ok(None);
        }
        v[i * (d + 1) + j] = c;
    }
    Ok(Some(v))
}

/// Monic operator of exact order `target_order` with coefficients of degree at
/// most `degree_bound` commuting with `l4`, gauge-normalized; `None` when the
/// ansatz has no solution of that order.
pub fn find_commuting_operator(
    l4: &DiffOp<PolyRing>,
    target_order: usize,
    degree_bound: usize,
) -> Result<Option<Found>> {
    let ring = *l4.ring();
    let d = degree_bound;
    let kernel = nullspace(&ansatz_system(l4, target_order, d)?);
    let solution_dim = kernel.len();
    let lead_cols: Vec<usize> = (0..=d).map(|j| target_order * (d + 1) + j).collect();
    let Some(v) = kernel.iter().find(|v| lead_cols.iter().any(|&c| !v[c].is_zero())) else {
        return Ok(None);
    };
    let m = from_vector(&ring, v, target_order, d);
    let lead = m.coeff(target_order);
    let Some(lc) = lead.as_constant() else {
        return Err(Error::Internal(format!("commuting operator with non-constant leading coefficient {lead}")));
    };
    let m = gauge_normalize(l4, &m.scale(&lc.recip()))?;
    if !l4.commutator(&m)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    Ok(Some(Found {
        operator: m,
        degree_bound: d,
        solution_dim,
    }))
}

/// Degree bounds tried for the order-`4g+2` partner: `6g+3` upwards in steps
/// of 3, up to `12g+6`.
pub fn degree_schedule(g: u32) -> Vec<usize> {
    let g = g as usize;
    (6 * g + 3..=12 * g + 6).step_by(3).collect()
}

/// Searches for the order-`4g+2` partner along [`degree_schedule`].
pub fn find_with_schedule(l4: &DiffOp<PolyRing>, g: u32) -> Result<Option<Found>> {
    let order = 4 * g as usize + 2;
    for d in degree_schedule(g) {
        if let Some(found) = find_commuting_operator(l4, order, d)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{rational_l4, Family, FamilySpec};
    use crate::rings::rat;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn dixmier_order_six() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let found = find_with_schedule(&l4, 1).unwrap().expect("partner exists");
        let m = &found.operator;
        assert_eq!(m.order(), Some(6));
        assert!(m.is_monic());
        assert!(l4.commutator(m).unwrap().is_zero());
        assert!(found.solution_dim >= 2);
    }

    #[test]
    fn square_case_gives_cube() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(1), q(0), q(2), q(0)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let found = find_commuting_operator(&l4, 6, 9).unwrap().expect("L2^3 commutes");
        let l2 = crate::families::make_schrodinger(&spec, false).unwrap().polynomial().unwrap();
        let cube = gauge_normalize(&l4, &l2.pow(3)).unwrap();
        let diff = found.operator.sub(&cube).unwrap();
        assert!(diff.order().is_none_or(|o| o <= 2));
        assert!(diff.commutator(&l2).unwrap().is_zero());
    }

    #[test]
    fn constant_ansatz_finds_nothing() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        assert!(find_commuting_operator(&l4, 6, 0).unwrap().is_none());
    }

    #[test]
    fn gauge_is_idempotent_and_kills_powers() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 1);
        let l4 = rational_l4(&spec).unwrap();
        let m = find_with_schedule(&l4, 1).unwrap().unwrap().operator;
        assert_eq!(gauge_normalize(&l4, &m).unwrap(), m);
        let shifted = m.add(&l4.scale(&q(3))).unwrap().add(&DiffOp::one(*l4.ring()).scale(&q(-5))).unwrap();
        assert_eq!(gauge_normalize(&l4, &shifted).unwrap(), m);
    }

    #[test]
    fn rejects_parameterized_or_non_monic() {
        let ring = PolyRing::new();
        let bad = DiffOp::new(ring, vec![MultiPoly::var(Var::A0), MultiPoly::zero(), MultiPoly::one()]);
        assert!(matches!(find_commuting_operator(&bad, 3, 2), Err(Error::BadOperator(_))));
        let non_monic = DiffOp::new(ring, vec![MultiPoly::zero(), MultiPoly::int(2)]);
        assert!(matches!(find_commuting_operator(&non_monic, 3, 2), Err(Error::BadOperator(_))));
    }

    #[test]
    fn schedule() {
        assert_eq!(degree_schedule(1), vec![9, 12, 15, 18]);
        assert_eq!(degree_schedule(2)[0], 15);
        assert_eq!(*degree_schedule(2).last().unwrap(), 30);
    }
}
