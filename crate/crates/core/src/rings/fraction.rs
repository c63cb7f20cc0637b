//! Rational functions `K(x)` over a constant coefficient field `K`.
//!
//! Canonical form: numerator and denominator coprime, denominator monic,
//! zero is `0/1`.

use super::{DiffRing, Rational, UniPolyRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Frac<E> {
    pub num: Vec<E>,
    pub den: Vec<E>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionField<K: DiffRing> {
    poly: UniPolyRing<K>,
}

impl<K: DiffRing> FractionField<K> {
    pub fn new(coeffs: K) -> Self {
        Self {
            poly: UniPolyRing::new(coeffs),
        }
    }

    pub fn poly_ring(&self) -> &UniPolyRing<K> {
        &self.poly
    }

    pub fn coefficient_ring(&self) -> &K {
        self.poly.coefficient_ring()
    }

    pub fn from_poly(&self, p: Vec<K::Elem>) -> Frac<K::Elem> {
        Frac {
            num: self.poly.trim(p),
            den: self.poly.one(),
        }
    }

    pub fn from_coeff(&self, c: K::Elem) -> Frac<K::Elem> {
        self.from_poly(vec![c])
    }

    pub fn x(&self) -> Frac<K::Elem> {
        self.from_poly(self.poly.x())
    }

    /// Canonical `num/den`.
    pub fn normalize(&self, num: Vec<K::Elem>, den: Vec<K::Elem>) -> Result<Frac<K::Elem>> {
        let num = self.poly.trim(num);
        let den = self.poly.trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(Frac {
                num,
                den: self.poly.one(),
            });
        }
        let g = self
            .poly
            .gcd(&num, &den)
            .ok_or_else(|| Error::Internal("coefficient ring is not a field".into()))?;
        let (mut n, _) = self.poly.div_rem(&num, &g).expect("gcd is monic");
        let (mut d, _) = self.poly.div_rem(&den, &g).expect("gcd is monic");
        let lead = d.last().expect("nonzero denominator").clone();
        let inv = self
            .coefficient_ring()
            .try_inv(&lead)
            .ok_or_else(|| Error::Internal("coefficient ring is not a field".into()))?;
        n = self.poly.scale_elem(&n, &inv);
        d = self.poly.scale_elem(&d, &inv);
        Ok(Frac { num: n, den: d })
    }

    fn norm(&self, num: Vec<K::Elem>, den: Vec<K::Elem>) -> Frac<K::Elem> {
        self.normalize(num, den).expect("denominators of canonical fractions are nonzero")
    }
}

/// Canonical fraction over `Q(x)`.
pub fn normalize_fraction(num: Vec<Rational>, den: Vec<Rational>) -> Result<Frac<Rational>> {
    FractionField::new(super::Rationals).normalize(num, den)
}

impl<K: DiffRing> DiffRing for FractionField<K> {
    type Elem = Frac<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(Vec::new())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(self.poly.one())
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.from_poly(self.poly.from_rational(q))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.den == b.den {
            return self.norm(self.poly.add(&a.num, &b.num), a.den.clone());
        }
        let num = self.poly.add(&self.poly.mul(&a.num, &b.den), &self.poly.mul(&b.num, &a.den));
        self.norm(num, self.poly.mul(&a.den, &b.den))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Frac {
            num: self.poly.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        self.norm(self.poly.mul(&a.num, &b.num), self.poly.mul(&a.den, &b.den))
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.norm(self.poly.scale(&a.num, q), a.den.clone())
    }

    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        // (n/d)' = (n' d - n d') / d^2
        let dn = self.poly.derive(&a.num);
        let dd = self.poly.derive(&a.den);
        let num = self.poly.sub(&self.poly.mul(&dn, &a.den), &self.poly.mul(&a.num, &dd));
        self.norm(num, self.poly.mul(&a.den, &a.den))
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        self.normalize(a.den.clone(), a.num.clone()).ok()
    }

    fn display(&self, a: &Self::Elem) -> String {
        if self.poly.is_one(&a.den) {
            self.poly.display(&a.num)
        } else {
            format!("[{}]/[{}]", self.poly.display(&a.num), self.poly.display(&a.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, Rationals};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    #[test]
    fn cancels_common_factor() {
        let f = normalize_fraction(q(&[-1, 0, 1]), q(&[-1, 1])).unwrap();
        assert_eq!(f.num, q(&[1, 1]));
        assert_eq!(f.den, q(&[1]));
    }

    #[test]
    fn zero_over_anything() {
        let f = normalize_fraction(vec![], q(&[3, 0, 2])).unwrap();
        assert!(f.num.is_empty());
        assert_eq!(f.den, q(&[1]));
    }

    #[test]
    fn denominator_made_monic() {
        let f = normalize_fraction(q(&[0, 2]), q(&[4])).unwrap();
        assert_eq!(f.num, vec![rat(0, 1), rat(1, 2)]);
        assert_eq!(f.den, q(&[1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(normalize_fraction(q(&[1]), vec![]).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = normalize_fraction(q(&[2, 4]), q(&[6, 0, 8])).unwrap();
        let g = normalize_fraction(f.num.clone(), f.den.clone()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn derivative_of_reciprocal() {
        let field = FractionField::new(Rationals);
        let inv_x = field.try_inv(&field.x()).unwrap();
        let d = field.derive(&inv_x);
        // -1/x^2
        assert_eq!(d, field.normalize(q(&[-1]), q(&[0, 0, 1])).unwrap());
    }
}
