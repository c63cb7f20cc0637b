//! Ordinary differential operators `sum_i a_i(x) D^i` over a differential ring.
//!
//! Coefficients are stored low order first and trimmed, so the zero operator
//! is the empty list and its order is `None`. Composition uses the Leibniz
//! expansion `D^k a = sum_s C(k, s) a^(s) D^(k - s)` aggregated per output
//! order.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{DiffRing, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp<R: DiffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: DiffRing> DiffOp<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut op = Self { ring, coeffs };
        op.trim();
        op
    }

    pub fn zero(ring: R) -> Self {
        Self { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one])
    }

    /// Multiplication operator by `a`.
    pub fn scalar(ring: R, a: R::Elem) -> Self {
        Self::new(ring, vec![a])
    }

    /// `D^k`.
    pub fn d_pow(ring: R, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = ring.one();
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Coefficient of `D^i` (zero beyond the order).
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Order, or `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::new(self.ring.clone(), coeffs))
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `a * self` (left multiplication by a function).
    pub fn left_mul(&self, a: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.mul(a, c)).collect();
        Self::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.scale(c, q)).collect();
        Self::new(self.ring.clone(), coeffs)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (Some(n), Some(m)) = (self.order(), other.order()) else {
            return Ok(Self::zero(self.ring.clone()));
        };
        let ring = &self.ring;
        // derivatives of other's coefficients up to order n
        let derivs: Vec<Vec<R::Elem>> = other
            .coeffs
            .iter()
            .map(|b| {
                let mut ds = Vec::with_capacity(n + 1);
                let mut cur = b.clone();
                for s in 0..=n {
                    if s > 0 {
                        cur = ring.derive(&cur);
                    }
                    ds.push(cur.clone());
                }
                ds
            })
            .collect();
        let binom = binomials(n);
        let mut out: Vec<R::Elem> = vec![ring.zero(); n + m + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            // a D^k o b_j D^j = sum_s C(k,s) a b_j^(s) D^(k-s+j)
            let mut acc: Vec<Option<R::Elem>> = vec![None; n + m + 1];
            for (j, ds) in derivs.iter().enumerate() {
                for (s, d) in ds.iter().enumerate().take(k + 1) {
                    if ring.is_zero(d) {
                        continue;
                    }
                    let term = if binom[k][s] == 1 {
                        d.clone()
                    } else {
                        ring.scale(d, &Rational::from_integer(binom[k][s].into()))
                    };
                    let slot = &mut acc[k - s + j];
                    *slot = Some(match slot.take() {
                        Some(prev) => ring.add(&prev, &term),
                        None => term,
                    });
                }
            }
            for (idx, c) in acc.into_iter().enumerate() {
                if let Some(c) = c {
                    let prod = if ring.is_one(a) { c } else { ring.mul(a, &c) };
                    out[idx] = ring.add(&out[idx], &prod);
                }
            }
        }
        Ok(Self::new(ring.clone(), out))
    }

    /// `[self, other] = self o other - other o self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..n {
            acc = acc.compose(self).expect("same ring");
        }
        acc
    }

    /// Right Euclidean division by a monic operator: `self = q o divisor + r`
    /// with `order(r) < order(divisor)`.
    pub fn right_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let d = divisor.order().expect("monic operators are nonzero");
        let ring = &self.ring;
        let mut rem = self.clone();
        let mut quot = vec![ring.zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(n) = rem.order() {
            if n < d {
                break;
            }
            let c = rem.coeffs[n].clone();
            let term = Self::d_pow(ring.clone(), n - d).left_mul(&c);
            let prod = term.compose(divisor)?;
            rem = rem.sub(&prod)?;
            debug_assert!(rem.order().is_none_or(|o| o < n));
            quot[n - d] = c;
        }
        Ok((Self::new(ring.clone(), quot), rem))
    }

    /// `p^{-1} o self o p` for a unit `p`.
    pub fn conjugate_by_unit(&self, p: &R::Elem) -> Result<Self> {
        let inv = self
            .ring
            .try_inv(p)
            .ok_or_else(|| Error::NotAUnit(self.ring.display(p)))?;
        let right = self.compose(&Self::scalar(self.ring.clone(), p.clone()))?;
        Ok(right.left_mul(&inv))
    }

    /// Maps the coefficients into another ring through a homomorphism that
    /// commutes with the derivations.
    pub fn map_ring<S: DiffRing, F>(&self, target: S, f: F) -> Result<DiffOp<S>>
    where
        F: Fn(&R::Elem) -> Result<S::Elem>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(DiffOp::new(target, coeffs))
    }
}

fn binomials(n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![1i64; k + 1];
        for s in 1..k {
            row[s] = rows[k - 1][s - 1] + rows[k - 1][s];
        }
        rows.push(row);
    }
    rows
}

impl<R: DiffRing> fmt::Display for DiffOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| {
                let s = self.ring.display(c);
                match i {
                    0 => format!("({s})"),
                    1 => format!("({s})*D"),
                    _ => format!("({s})*D^{i}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
