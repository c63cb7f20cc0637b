//! Dense univariate polynomials `K[x]` with derivation `d/dx`.

use super::{DiffRing, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct UniPolyRing<K: DiffRing> {
    coeffs: K,
}

impl<K: DiffRing> UniPolyRing<K> {
    pub fn new(coeffs: K) -> Self {
        Self { coeffs }
    }

    pub fn coefficient_ring(&self) -> &K {
        &self.coeffs
    }

    pub fn x(&self) -> Vec<K::Elem> {
        vec![self.coeffs.zero(), self.coeffs.one()]
    }

    pub fn constant(&self, c: K::Elem) -> Vec<K::Elem> {
        self.trim(vec![c])
    }

    pub fn from_coeffs(&self, c: Vec<K::Elem>) -> Vec<K::Elem> {
        self.trim(c)
    }

    pub fn trim(&self, mut p: Vec<K::Elem>) -> Vec<K::Elem> {
        while p.last().is_some_and(|c| self.coeffs.is_zero(c)) {
            p.pop();
        }
        p
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self, p: &[K::Elem]) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn leading(&self, p: &[K::Elem]) -> Option<K::Elem> {
        p.last().cloned()
    }

    pub fn scale_elem(&self, p: &[K::Elem], c: &K::Elem) -> Vec<K::Elem> {
        self.trim(p.iter().map(|a| self.coeffs.mul(a, c)).collect())
    }

    /// Euclidean division; `None` if the divisor is zero or its leading
    /// coefficient is not a unit.
    pub fn div_rem(&self, a: &[K::Elem], b: &[K::Elem]) -> Option<(Vec<K::Elem>, Vec<K::Elem>)> {
        let lead_inv = self.coeffs.try_inv(b.last()?)?;
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return Some((Vec::new(), r));
        }
        let mut q = vec![self.coeffs.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.coeffs.mul(r.last()?, &lead_inv);
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = self.coeffs.sub(&r[shift + i], &self.coeffs.mul(&c, bi));
            }
            q[shift] = c;
            r.pop();
            r = self.trim(r);
        }
        Some((self.trim(q), r))
    }

    /// Scales to a monic polynomial (zero stays zero).
    pub fn monic(&self, p: &[K::Elem]) -> Option<Vec<K::Elem>> {
        match p.last() {
            None => Some(Vec::new()),
            Some(lead) => {
                let inv = self.coeffs.try_inv(lead)?;
                Some(self.scale_elem(p, &inv))
            }
        }
    }

    /// Monic gcd over a coefficient field.
    pub fn gcd(&self, a: &[K::Elem], b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        while !r1.is_empty() {
            let (_, r) = self.div_rem(&r0, &r1)?;
            r0 = std::mem::replace(&mut r1, r);
        }
        self.monic(&r0)
    }

    /// Horner evaluation at a coefficient-ring point.
    pub fn eval(&self, p: &[K::Elem], at: &K::Elem) -> K::Elem {
        let mut acc = self.coeffs.zero();
        for c in p.iter().rev() {
            acc = self.coeffs.add(&self.coeffs.mul(&acc, at), c);
        }
        acc
    }
}

impl<K: DiffRing> DiffRing for UniPolyRing<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }

    fn one(&self) -> Self::Elem {
        vec![self.coeffs.one()]
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.trim(vec![self.coeffs.from_rational(q)])
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.coeffs.add(o, s);
        }
        self.trim(out)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.coeffs.neg(c)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.coeffs.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if self.coeffs.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if self.coeffs.is_zero(bj) {
                    continue;
                }
                out[i + j] = self.coeffs.add(&out[i + j], &self.coeffs.mul(ai, bj));
            }
        }
        self.trim(out)
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.trim(a.iter().map(|c| self.coeffs.scale(c, q)).collect())
    }

    fn derive(&self, a: &Self::Elem) -> Self::Elem {
        let mut out: Vec<K::Elem> = a.iter().map(|c| self.coeffs.derive(c)).collect();
        for (k, c) in a.iter().enumerate().skip(1) {
            let t = self.coeffs.scale(c, &Rational::from_integer((k as i64).into()));
            out[k - 1] = self.coeffs.add(&out[k - 1], &t);
        }
        self.trim(out)
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() == 1 {
            Some(vec![self.coeffs.try_inv(&a[0])?])
        } else {
            None
        }
    }

    fn display(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        a.iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.coeffs.is_zero(c))
            .map(|(k, c)| {
                let s = self.coeffs.display(c);
                match k {
                    0 => format!("({s})"),
                    1 => format!("({s})*x"),
                    _ => format!("({s})*x^{k}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
