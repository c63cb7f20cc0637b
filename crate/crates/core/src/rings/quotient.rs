//! `B[z]/(chi(z))` for a monic `chi` whose coefficients are constants of the
//! derivation, so `d/dx` acts coefficientwise and `z` is a constant.
//!
//! Nothing here assumes `chi` is irreducible or squarefree: ring operations
//! are division-free. Inversion is attempted through the extended Euclidean
//! algorithm and succeeds whenever the base is a field and the element is
//! coprime to `chi`.

use std::sync::Arc;

use super::{DiffRing, MultiPoly, Rational, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing<B: DiffRing> {
    base: B,
    /// Coefficients of `chi`, ascending, last one equal to `one`.
    modulus: Arc<Vec<B::Elem>>,
}

impl<B: DiffRing> QuotientRing<B> {
    pub fn new(base: B, chi: Vec<B::Elem>) -> Result<Self> {
        let Some(lead) = chi.last() else {
            return Err(Error::NonMonicModulus);
        };
        if chi.len() < 2 || !base.is_one(lead) {
            return Err(Error::NonMonicModulus);
        }
        if chi.iter().any(|c| !base.is_zero(&base.derive(c))) {
            return Err(Error::NonConstantModulus);
        }
        Ok(Self {
            base,
            modulus: Arc::new(chi),
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn modulus(&self) -> &[B::Elem] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Class of `z`.
    pub fn generator(&self) -> Vec<B::Elem> {
        self.reduce(&[self.base.zero(), self.base.one()])
    }

    /// Embeds a base element as a constant polynomial in `z`.
    pub fn embed(&self, b: &B::Elem) -> Vec<B::Elem> {
        self.reduce(std::slice::from_ref(b))
    }

    /// Remainder of a polynomial in `z` modulo `chi`; always of length `deg chi`.
    pub fn reduce(&self, p: &[B::Elem]) -> Vec<B::Elem> {
        let d = self.degree();
        let mut work: Vec<B::Elem> = p.to_vec();
        if work.len() > d {
            for k in (d..work.len()).rev() {
                let c = work[k].clone();
                if self.base.is_zero(&c) {
                    continue;
                }
                for i in 0..d {
                    let t = self.base.mul(&c, &self.modulus[i]);
                    work[k - d + i] = self.base.sub(&work[k - d + i], &t);
                }
                work[k] = self.base.zero();
            }
            work.truncate(d);
        }
        while work.len() < d {
            work.push(self.base.zero());
        }
        work
    }

    fn trim(&self, mut p: Vec<B::Elem>) -> Vec<B::Elem> {
        while p.last().is_some_and(|c| self.base.is_zero(c)) {
            p.pop();
        }
        p
    }

    fn poly_mul(&self, a: &[B::Elem], b: &[B::Elem]) -> Vec<B::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if self.base.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if self.base.is_zero(bj) {
                    continue;
                }
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(ai, bj));
            }
        }
        out
    }

    fn poly_sub(&self, a: &[B::Elem], b: &[B::Elem]) -> Vec<B::Elem> {
        let n = a.len().max(b.len());
        let zero = self.base.zero();
        let out = (0..n)
            .map(|i| self.base.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(out)
    }

    /// Division with remainder in `B[z]`, requiring an invertible leading coefficient.
    fn poly_div_rem(&self, a: &[B::Elem], b: &[B::Elem]) -> Option<(Vec<B::Elem>, Vec<B::Elem>)> {
        let b = self.trim(b.to_vec());
        let lead_inv = self.base.try_inv(b.last()?)?;
        let mut r = self.trim(a.to_vec());
        if r.len() < b.len() {
            return Some((Vec::new(), r));
        }
        let mut q = vec![self.base.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.base.mul(r.last()?, &lead_inv);
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = self.base.sub(&r[shift + i], &self.base.mul(&c, bi));
            }
            q[shift] = c;
            r.pop();
            r = self.trim(r);
        }
        Some((q, r))
    }
}

/// Reduces a polynomial in `z` (coefficients free of `z`) modulo the monic
/// `chi`, given as a polynomial in `z` over the same parameters.
pub fn reduce_mod_char(p: &MultiPoly, chi: &MultiPoly) -> Result<MultiPoly> {
    let chi_coeffs = chi.coefficients_in(Var::Z)?;
    let ring = QuotientRing::new(super::PolyRing::new(), chi_coeffs)?;
    let reduced = ring.reduce(&p.coefficients_in(Var::Z)?);
    let mut out = MultiPoly::zero();
    for (k, c) in reduced.iter().enumerate() {
        out = &out + &(c * &MultiPoly::var_pow(Var::Z, k as i32));
    }
    Ok(out)
}

impl<B: DiffRing> DiffRing for QuotientRing<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.embed(&self.base.from_rational(q))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.poly_mul(a, b))
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        a.iter().map(|x| self.base.scale(x, q)).collect()
    }

    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.derive(x)).collect()
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // extended Euclid: track s with s*a = r (mod chi)
        let mut r0 = self.modulus.to_vec();
        let mut r1 = self.trim(a.clone());
        let mut s0: Vec<B::Elem> = Vec::new();
        let mut s1 = vec![self.base.one()];
        if r1.is_empty() {
            return None;
        }
        while r1.len() > 1 {
            let (q, r) = self.poly_div_rem(&r0, &r1)?;
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                // gcd has positive degree
                return None;
            }
        }
        let c_inv = self.base.try_inv(&r1[0])?;
        let inv: Vec<B::Elem> = s1.iter().map(|c| self.base.mul(c, &c_inv)).collect();
        Some(self.reduce(&inv))
    }

    fn display(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(k, c)| {
                let s = self.base.display(c);
                match k {
                    0 => format!("({s})"),
                    1 => format!("({s})*z"),
                    _ => format!("({s})*z^{k}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}
