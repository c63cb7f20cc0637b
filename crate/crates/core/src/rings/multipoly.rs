//! Sparse multivariate polynomials over the rationals in the fixed symbol
//! set `x, a0, a1, a2, a3, a4, z`.
//!
//! Terms are kept in a `BTreeMap` ordered graded-lexicographically, zero
//! coefficients are never stored, so derived `PartialEq` is ring equality.
//! Selected parameter symbols may be declared invertible by the ring, in
//! which case they may carry negative exponents (Laurent adjunction).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{DiffRing, Rational};
use crate::error::{Error, Result};

pub const NVARS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    A0 = 1,
    A1 = 2,
    A2 = 3,
    A3 = 4,
    A4 = 5,
    Z = 6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::A0, Var::A1, Var::A2, Var::A3, Var::A4, Var::Z];

    /// The potential coefficient `a_i`.
    pub fn alpha(i: usize) -> Var {
        match i {
            0 => Var::A0,
            1 => Var::A1,
            2 => Var::A2,
            3 => Var::A3,
            4 => Var::A4,
            _ => panic!("no potential coefficient a{i}"),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::A0 => "a0",
            Var::A1 => "a1",
            Var::A2 => "a2",
            Var::A3 => "a3",
            Var::A4 => "a4",
            Var::Z => "z",
        }
    }
}

/// Exponent vector, indexed by [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    fn with_exp(&self, v: Var, e: i32) -> Monomial {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    // graded lex, x > a0 > ... > z
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::term(Rational::one(), Monomial::var(v, e))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.add_term(m.with_exp(v, e - 1), &(c * Rational::from_integer(e.into())));
            }
        }
        out
    }

    /// Largest exponent of `v` (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    /// Splits into coefficients of nonnegative powers of `v`; the coefficients
    /// no longer involve `v`. Fails on negative exponents of `v`.
    pub fn coefficients_in(&self, v: Var) -> Result<Vec<MultiPoly>> {
        if self.min_degree_in(v) < 0 {
            return Err(Error::Internal(format!("negative power of {}", v.name())));
        }
        let deg = self.degree_in(v).max(0) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].add_term(m.with_exp(v, 0), c);
        }
        Ok(out)
    }

    /// Substitutes `v := value`. `v` must appear with nonnegative exponents only.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Result<MultiPoly> {
        let coeffs = self.coefficients_in(v)?;
        let mut out = MultiPoly::zero();
        let mut power = MultiPoly::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = &power * value;
            }
            if !c.is_zero() {
                out = &out + &(c * &power);
            }
        }
        Ok(out)
    }

    /// Substitutes rational values for the variables given in `values`.
    pub fn specialize(&self, values: &[(Var, Rational)]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (v, val) in values {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                if val.is_zero() && e < 0 {
                    return Err(Error::DivisionByZero);
                }
                coeff *= pow_rational(val, e);
                mono = mono.with_exp(*v, 0);
            }
            out.add_term(mono, &coeff);
        }
        Ok(out)
    }

    /// Evaluates with every variable replaced by a rational.
    pub fn eval(&self, values: &[Rational; NVARS]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e != 0 {
                    if values[v.index()].is_zero() && e < 0 {
                        return Err(Error::DivisionByZero);
                    }
                    t *= pow_rational(&values[v.index()], e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Image under the ring homomorphism sending each variable to `images[v]`.
    /// Negative exponents require the image to be a unit of `ring`.
    pub fn realize<R: DiffRing>(&self, ring: &R, images: &[R::Elem; NVARS]) -> Result<R::Elem> {
        let mut acc = ring.zero();
        let mut inverses: [Option<R::Elem>; NVARS] = Default::default();
        for (m, c) in &self.terms {
            let mut t = ring.from_rational(c);
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(&images[v.index()], e as u32));
                } else if e < 0 {
                    if inverses[v.index()].is_none() {
                        let inv = ring
                            .try_inv(&images[v.index()])
                            .ok_or_else(|| Error::NotAUnit(ring.display(&images[v.index()])))?;
                        inverses[v.index()] = Some(inv);
                    }
                    let inv = inverses[v.index()].as_ref().expect("set above");
                    t = ring.mul(&t, &ring.pow(inv, (-e) as u32));
                }
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }
}

pub(crate) fn pow_rational(q: &Rational, e: i32) -> Rational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

/// Polynomial ring `Q[x, a0..a4, z]` with derivation `d/dx`; the symbols in
/// `invertible` are adjoined together with their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PolyRing {
    invertible: [bool; NVARS],
}

impl PolyRing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Laurent adjunction of the given parameter symbols. `x` cannot be inverted.
    pub fn with_invertible(vars: &[Var]) -> Self {
        let mut invertible = [false; NVARS];
        for v in vars {
            assert!(*v != Var::X, "x cannot be made invertible");
            invertible[v.index()] = true;
        }
        Self { invertible }
    }

    pub fn is_invertible(&self, v: Var) -> bool {
        self.invertible[v.index()]
    }

    /// Checks that negative exponents only occur on invertible symbols.
    pub fn contains(&self, p: &MultiPoly) -> bool {
        p.terms()
            .all(|(m, _)| Var::ALL.iter().all(|v| m.exp(*v) >= 0 || self.is_invertible(*v)))
    }

    /// Identity images for [`MultiPoly::realize`] into this ring.
    pub fn identity_images(&self) -> [MultiPoly; NVARS] {
        Var::ALL.map(MultiPoly::var)
    }
}

impl DiffRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero()
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one()
    }

    fn from_rational(&self, q: &Rational) -> MultiPoly {
        MultiPoly::constant(q.clone())
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }

    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }

    fn scale(&self, a: &MultiPoly, q: &Rational) -> MultiPoly {
        a.scale(q)
    }

    fn is_one(&self, a: &MultiPoly) -> bool {
        a.is_one()
    }

    fn derive(&self, a: &MultiPoly) -> MultiPoly {
        a.partial(Var::X)
    }

    fn try_inv(&self, a: &MultiPoly) -> Option<MultiPoly> {
        if a.len() != 1 {
            return None;
        }
        let (m, c) = a.terms().next()?;
        let ok = Var::ALL.iter().all(|v| m.exp(*v) == 0 || self.is_invertible(*v));
        if !ok {
            return None;
        }
        let mut inv = [0; NVARS];
        for (slot, e) in inv.iter_mut().zip(m.0.iter()) {
            *slot = -e;
        }
        Some(MultiPoly::term(c.recip(), Monomial(inv)))
    }

    fn display(&self, a: &MultiPoly) -> String {
        a.to_string()
    }
}
