//! Exact differential rings.
//!
//! A ring is a value implementing [`DiffRing`]: it carries whatever context
//! its elements need (the modulus of a quotient, the set of invertible
//! variables of a Laurent polynomial ring, ...) and performs arithmetic on
//! plain element values. Elements are always kept in canonical form, so
//! structural equality of elements is ring equality.

mod fraction;
mod laurent;
mod multipoly;
mod quotient;
mod rational;
mod roots;
mod unipoly;

use std::fmt::Debug;

pub use fraction::{normalize_fraction, Frac, FractionField};
pub use laurent::{LaurentElem, LaurentRing};
pub use multipoly::{Monomial, MultiPoly, PolyRing, Var, NVARS};
pub use quotient::{reduce_mod_char, QuotientRing};
pub use rational::{parse_rational, rat, Rational, Rationals};
pub use roots::{rational_roots, split_rational_roots, RootSplit};
pub use unipoly::UniPolyRing;

use crate::error::{Error, Result};

/// A commutative ring with a derivation, acting on canonical element values.
pub trait DiffRing: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The derivation (`d/dx` for every ring in this crate).
    fn derive(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, if `a` is a unit.
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn display(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `k`-th derivative.
    fn derive_n(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut out = a.clone();
        for _ in 0..k {
            if self.is_zero(&out) {
                break;
            }
            out = self.derive(&out);
        }
        out
    }
}

/// An element paired with the ring instance it lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<R: DiffRing> {
    pub ring: R,
    pub value: R::Elem,
}

impl<R: DiffRing> Element<R> {
    pub fn new(ring: R, value: R::Elem) -> Self {
        Self { ring, value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArithResult<R: DiffRing> {
    Value(Element<R>),
    Bool(bool),
}

/// Checked binary arithmetic on ring-tagged elements. `Neg` ignores `b`
/// apart from the ring check.
pub fn arith<R: DiffRing>(a: &Element<R>, b: &Element<R>, op: ArithOp) -> Result<ArithResult<R>> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let ring = &a.ring;
    let value = match op {
        ArithOp::Add => ring.add(&a.value, &b.value),
        ArithOp::Sub => ring.sub(&a.value, &b.value),
        ArithOp::Mul => ring.mul(&a.value, &b.value),
        ArithOp::Neg => ring.neg(&a.value),
        ArithOp::Equal => return Ok(ArithResult::Bool(a.value == b.value)),
    };
    Ok(ArithResult::Value(Element::new(ring.clone(), value)))
}

/// Derivative of a ring-tagged element.
pub fn derive<R: DiffRing>(a: &Element<R>) -> Element<R> {
    Element::new(a.ring.clone(), a.ring.derive(&a.value))
}
