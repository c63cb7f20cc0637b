//! Bivariate polynomials `R(z, w)` over the rationals: spectral curves.
//!
//! Besides ring arithmetic this module provides the squarefree part over
//! `Q(z)[w]` (primitive remainder sequences in `Q[z][w]`) and the operator
//! substitution `R(A, B)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::rings::{parse_rational, DiffRing, Rational, Rationals, UniPolyRing};

type QPoly = Vec<Rational>;

/// Polynomial in `z` and `w`; keys are `(deg_z, deg_w)`, zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectralCurve {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl SpectralCurve {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, z_exp: u32, w_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((z_exp, w_exp), c);
        }
        Self { terms }
    }

    pub fn z() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn w() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    /// Polynomial in `z` only.
    pub fn from_z_poly(p: &[Rational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.iter().enumerate() {
            out.add_term(k as u32, 0, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, z_exp: u32, w_exp: u32) -> Rational {
        self.terms.get(&(z_exp, w_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, z_exp: u32, w_exp: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let key = (z_exp, w_exp);
        let sum = self.terms.get(&key).map_or_else(|| c.clone(), |e| e + c);
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn degree_w(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((i, j), v) in &self.terms {
            out.add_term(*i, *j, &(v * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of `w^j` as dense polynomials in `z`.
    pub fn w_coefficients(&self) -> Vec<QPoly> {
        let Some(dw) = self.degree_w() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); dw as usize + 1];
        for ((i, j), c) in &self.terms {
            let slot = &mut out[*j as usize];
            if slot.len() <= *i as usize {
                slot.resize(*i as usize + 1, Rational::zero());
            }
            slot[*i as usize] = c.clone();
        }
        out
    }

    pub fn from_w_coefficients(coeffs: &[QPoly]) -> Self {
        let mut out = Self::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.iter().enumerate() {
                out.add_term(i as u32, j as u32, c);
            }
        }
        out
    }

    /// `-R(z, 0)` when `R = w^2 - F(z)` exactly, i.e. `F`.
    pub fn hyperelliptic_f(&self) -> Option<QPoly> {
        let cs = self.w_coefficients();
        if cs.len() != 3 || !cs[1].is_empty() || cs[2] != vec![Rational::one()] {
            return None;
        }
        Some(cs[0].iter().map(|c| -c).collect())
    }

    /// Squarefree part in `Q(z)[w]` (times the squarefree part of the content),
    /// normalized so the leading `w` coefficient has leading rational coefficient 1.
    pub fn squarefree_part(&self) -> Result<SpectralCurve> {
        if self.is_zero() {
            return Err(Error::Internal("squarefree part of the zero polynomial".into()));
        }
        let p = self.w_coefficients();
        let (content, prim) = primitive_part(&p);
        let ring = qring();
        let content_sqf = if content.len() > 1 {
            let g = ring.gcd(&content, &ring.derive(&content)).expect("Q is a field");
            ring.div_rem(&content, &g).expect("monic").0
        } else {
            vec![Rational::one()]
        };
        let dp = w_derivative(&prim);
        let g = if dp.is_empty() { prim.clone() } else { prs_gcd(&prim, &dp) };
        let quotient = exact_div(&prim, &g)?;
        let scaled: Vec<QPoly> = quotient.iter().map(|c| ring.mul(c, &content_sqf)).collect();
        Ok(Self::from_w_coefficients(&scaled).normalized())
    }

    /// Scales so the leading coefficient (in `w`, then in `z`) is one.
    pub fn normalized(&self) -> SpectralCurve {
        let Some(dw) = self.degree_w() else {
            return self.clone();
        };
        let lead = self
            .terms
            .iter()
            .filter(|((_, j), _)| *j == dw)
            .max_by_key(|((i, _), _)| *i)
            .map(|(_, c)| c.clone())
            .expect("nonzero");
        self.scale(&lead.recip())
    }

    /// Exact `{"z^i*w^j": "num/den"}` map.
    pub fn to_coefficient_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|((i, j), c)| (monomial_key(*i, *j), c.to_string()))
            .collect()
    }

    pub fn from_coefficient_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut out = Self::zero();
        for (k, v) in map {
            let (i, j) = parse_monomial_key(k)?;
            out.add_term(i, j, &parse_rational(v)?);
        }
        Ok(out)
    }

    /// Evaluates `R(A, B)` on commuting operators.
    pub fn eval_at_operators<R: DiffRing>(&self, a: &DiffOp<R>, b: &DiffOp<R>) -> Result<DiffOp<R>> {
        eval_curve_at_operators(self, a, b)
    }
}

fn monomial_key(i: u32, j: u32) -> String {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("w".to_string()),
        _ => parts.push(format!("w^{j}")),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn parse_monomial_key(k: &str) -> Result<(u32, u32)> {
    let mut zi = 0;
    let mut wj = 0;
    if k.trim() == "1" {
        return Ok((0, 0));
    }
    for factor in k.split('*') {
        let f = factor.trim();
        let (name, exp) = match f.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {k:?}")))?),
            None => (f, 1),
        };
        match name {
            "z" => zi += exp,
            "w" => wj += exp,
            _ => return Err(Error::Parse(format!("unknown symbol in {k:?}"))),
        }
    }
    Ok((zi, wj))
}

fn qring() -> UniPolyRing<Rationals> {
    UniPolyRing::new(Rationals)
}

fn trim_w(mut p: Vec<QPoly>) -> Vec<QPoly> {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

fn content(p: &[QPoly]) -> QPoly {
    let ring = qring();
    let mut g: QPoly = Vec::new();
    for c in p {
        g = ring.gcd(&g, c).expect("Q is a field");
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn primitive_part(p: &[QPoly]) -> (QPoly, Vec<QPoly>) {
    let ring = qring();
    let c = content(p);
    let prim = p
        .iter()
        .map(|a| ring.div_rem(a, &c).expect("content is monic").0)
        .collect();
    (c, trim_w(prim))
}

fn w_derivative(p: &[QPoly]) -> Vec<QPoly> {
    let ring = qring();
    trim_w(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| ring.scale(c, &Rational::from_integer((j as i64).into())))
            .collect(),
    )
}

/// Pseudo-remainder of `a` by `b` in `Q[z][w]`.
fn prem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let ring = qring();
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = a.to_vec();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let lr = r.last().expect("nonempty").clone();
        let mut next: Vec<QPoly> = r.iter().map(|c| ring.mul(c, &lb)).collect();
        for (i, bi) in b.iter().enumerate() {
            next[shift + i] = ring.sub(&next[shift + i], &ring.mul(&lr, bi));
        }
        r = trim_w(next);
    }
    r
}

/// Primitive gcd in `Q[z][w]` of two primitive polynomials.
fn prs_gcd(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let (mut r0, mut r1) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    r0 = primitive_part(&r0).1;
    r1 = primitive_part(&r1).1;
    while !r1.is_empty() {
        let r = prem(&r0, &r1);
        r0 = r1;
        r1 = if r.is_empty() { r } else { primitive_part(&r).1 };
    }
    r0
}

/// Exact quotient `a / b` in `Q[z][w]`.
fn exact_div(a: &[QPoly], b: &[QPoly]) -> Result<Vec<QPoly>> {
    let ring = qring();
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return Err(Error::Internal("inexact bivariate division".into()));
    }
    let mut q = vec![Vec::new(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (c, rem) = ring.div_rem(r.last().expect("nonempty"), lb).expect("Q is a field");
        if !rem.is_empty() {
            return Err(Error::Internal("inexact bivariate division".into()));
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = ring.sub(&r[shift + i], &ring.mul(&c, bi));
        }
        q[shift] = c;
        r = trim_w(r);
        if r.is_empty() {
            break;
        }
    }
    if !r.is_empty() {
        return Err(Error::Internal("inexact bivariate division".into()));
    }
    Ok(trim_w(q))
}

/// `R(A, B) = sum r_ij A^i B^j`.
pub fn eval_curve_at_operators<R: DiffRing>(
    curve: &SpectralCurve,
    a: &DiffOp<R>,
    b: &DiffOp<R>,
) -> Result<DiffOp<R>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring().clone();
    let max_i = curve.degree_z().unwrap_or(0) as usize;
    let max_j = curve.degree_w().unwrap_or(0) as usize;
    let mut a_pows = vec![DiffOp::one(ring.clone())];
    for _ in 0..max_i {
        let next = a_pows.last().expect("nonempty").compose(a)?;
        a_pows.push(next);
    }
    let mut b_pows = vec![DiffOp::one(ring.clone())];
    for _ in 0..max_j {
        let next = b_pows.last().expect("nonempty").compose(b)?;
        b_pows.push(next);
    }
    let mut acc = DiffOp::zero(ring);
    for ((i, j), c) in curve.terms() {
        let term = a_pows[*i as usize].compose(&b_pows[*j as usize])?.scale(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

impl fmt::Display for SpectralCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest w power first
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let key = monomial_key(k.0, k.1);
            if key == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{abs}*{key}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SpectralCurve {
    type Output = SpectralCurve;
    fn add(self, rhs: &SpectralCurve) -> SpectralCurve {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, c);
        }
        out
    }
}

impl Sub for &SpectralCurve {
    type Output = SpectralCurve;
    fn sub(self, rhs: &SpectralCurve) -> SpectralCurve {
        self + &(-rhs)
    }
}

impl Neg for &SpectralCurve {
    type Output = SpectralCurve;
    fn neg(self) -> SpectralCurve {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SpectralCurve {
    type Output = SpectralCurve;
    fn mul(self, rhs: &SpectralCurve) -> SpectralCurve {
        let mut out = SpectralCurve::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, &(a * b));
            }
        }
        out
    }
}
