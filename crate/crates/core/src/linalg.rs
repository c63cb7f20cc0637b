//! Fraction-free nullspace computation for sparse rational matrices.
//!
//! Rows are scaled to primitive integer vectors, then reduced to reduced
//! row-echelon form with integer row operations and content removal after
//! each step. Pivots are chosen deterministically: rows in input order, the
//! first nonzero column of the reduced row.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rings::Rational;

type IntRow = BTreeMap<usize, BigInt>;

/// Sparse rational matrix with a fixed column count.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row; zero entries are dropped.
    pub fn push_row(&mut self, row: BTreeMap<usize, Rational>) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        let row: BTreeMap<usize, Rational> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Rational>] {
        &self.rows
    }

    /// `A v` for a dense vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (&c, a)| acc + a * &v[c]))
            .collect()
    }
}

fn primitive(row: &BTreeMap<usize, Rational>) -> IntRow {
    let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(&c, v)| (c, (v * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.values_mut() {
        *v /= &g;
    }
}

/// `a * row - b * pivot_row`, eliminating column `col` from `row`.
fn eliminate(row: &mut IntRow, pivot_row: &IntRow, col: usize) {
    let Some(b) = row.get(&col).cloned() else {
        return;
    };
    let a = pivot_row[&col].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    let mut out = IntRow::new();
    for (&c, v) in row.iter() {
        out.insert(c, v * &a);
    }
    for (&c, v) in pivot_row {
        let entry = out.entry(c).or_insert_with(BigInt::zero);
        *entry -= v * &b;
    }
    out.retain(|_, v| !v.is_zero());
    remove_content(&mut out);
    *row = out;
}

/// Reduced row-echelon form: pivot column -> primitive integer row whose
/// other pivot columns are zero.
fn rref(m: &SparseMatrix) -> BTreeMap<usize, IntRow> {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for row in m.rows() {
        let mut r = primitive(row);
        let cols: Vec<usize> = r.keys().copied().filter(|c| pivots.contains_key(c)).collect();
        for c in cols {
            eliminate(&mut r, &pivots[&c], c);
        }
        let Some((&pc, _)) = r.iter().next() else {
            continue;
        };
        if r[&pc].is_negative() {
            for v in r.values_mut() {
                *v = -&*v;
            }
        }
        for other in pivots.values_mut() {
            eliminate(other, &r, pc);
        }
        pivots.insert(pc, r);
    }
    pivots
}

/// Basis of `{v : A v = 0}`, one vector per free column (ascending), with a
/// `1` in that column and zeros in the other free columns.
pub fn nullspace(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let pivots = rref(m);
    let free: Vec<usize> = (0..m.ncols()).filter(|c| !pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.ncols()];
            v[f] = Rational::one();
            for (&pc, row) in &pivots {
                if let Some(a) = row.get(&f) {
                    v[pc] = -Rational::new(a.clone(), row[&pc].clone());
                }
            }
            v
        })
        .collect()
}

/// Rank of the matrix.
pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    fn matrix(ncols: usize, rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c, rat(v, 1))).collect());
        }
        m
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = matrix(3, &[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(ns[0], vec![rat(-2, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = matrix(2, &[&[1, 1], &[1, -1]]);
        assert!(nullspace(&m).is_empty());
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn fractional_entries() {
        let mut m = SparseMatrix::new(3);
        m.push_row([(0, rat(1, 2)), (2, rat(1, 3))].into_iter().collect());
        m.push_row([(1, rat(2, 5)), (2, rat(-1, 7))].into_iter().collect());
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![rat(-2, 3), rat(5, 14), rat(1, 1)]);
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        let m = SparseMatrix::new(3);
        assert_eq!(nullspace(&m).len(), 3);
    }
}
