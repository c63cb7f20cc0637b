//! Laurent polynomials in `t = exp(x/2)` over a differential base ring.
//!
//! The derivation is twisted: `D(c t^k) = (D c) t^k + (k/2) c t^k`, so
//! `e^x = t^2` and `e^{g x / 2} = t^g` are monomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{DiffRing, Rational};

pub type LaurentElem<E> = BTreeMap<i64, E>;

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentRing<B: DiffRing> {
    base: B,
}

impl<B: DiffRing> LaurentRing<B> {
    pub fn new(base: B) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    /// `c t^k`.
    pub fn monomial(&self, c: B::Elem, k: i64) -> LaurentElem<B::Elem> {
        let mut m = BTreeMap::new();
        if !self.base.is_zero(&c) {
            m.insert(k, c);
        }
        m
    }

    /// `t^k`.
    pub fn t_pow(&self, k: i64) -> LaurentElem<B::Elem> {
        self.monomial(self.base.one(), k)
    }

    pub fn embed(&self, c: &B::Elem) -> LaurentElem<B::Elem> {
        self.monomial(c.clone(), 0)
    }

    fn add_into(&self, acc: &mut LaurentElem<B::Elem>, k: i64, c: &B::Elem) {
        if self.base.is_zero(c) {
            return;
        }
        let sum = match acc.get(&k) {
            Some(existing) => self.base.add(existing, c),
            None => c.clone(),
        };
        if self.base.is_zero(&sum) {
            acc.remove(&k);
        } else {
            acc.insert(k, sum);
        }
    }
}

impl<B: DiffRing> DiffRing for LaurentRing<B> {
    type Elem = LaurentElem<B::Elem>;

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn one(&self) -> Self::Elem {
        self.t_pow(0)
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.monomial(self.base.from_rational(q), 0)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (k, c) in b {
            self.add_into(&mut out, *k, c);
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|(k, c)| (*k, self.base.neg(c))).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                self.add_into(&mut out, ka + kb, &self.base.mul(ca, cb));
            }
        }
        out
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        if q.is_zero() {
            return self.zero();
        }
        a.iter().map(|(k, c)| (*k, self.base.scale(c, q))).collect()
    }

    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (k, c) in a {
            let d = self.base.derive(c);
            let twist = self.base.scale(c, &Rational::new((*k).into(), 2.into()));
            self.add_into(&mut out, *k, &self.base.add(&d, &twist));
        }
        out
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 {
            return None;
        }
        let (k, c) = a.iter().next()?;
        Some(self.monomial(self.base.try_inv(c)?, -k))
    }

    fn display(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        a.iter()
            .rev()
            .map(|(k, c)| {
                let s = self.base.display(c);
                match k {
                    0 => format!("({s})"),
                    1 => format!("({s})*t"),
                    _ => format!("({s})*t^{k}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, Rationals};

    #[test]
    fn derivative_of_t_power() {
        let ring = LaurentRing::new(Rationals);
        let d = ring.derive(&ring.t_pow(3));
        assert_eq!(d, ring.monomial(rat(3, 2), 3));
        let d = ring.derive(&ring.t_pow(-4));
        assert_eq!(d, ring.monomial(rat(-2, 1), -4));
        assert!(ring.derive(&ring.one()).is_empty());
    }

    #[test]
    fn units_are_monomials() {
        let ring = LaurentRing::new(Rationals);
        let u = ring.monomial(rat(2, 3), 5);
        let inv = ring.try_inv(&u).unwrap();
        assert_eq!(ring.mul(&u, &inv), ring.one());
        let not_unit = ring.add(&ring.t_pow(1), &ring.one());
        assert!(ring.try_inv(&not_unit).is_none());
    }
}
