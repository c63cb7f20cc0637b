//! The three Schrödinger-squared operator families.
//!
//! * cubic: `L4 = (D^2 + a3 x^3 + a2 x^2 + a1 x + a0)^2 + a3 g(g+1) x`
//! * quartic: `L4 = (D^2 + a4 x^4 + ... + a0)^2 + 2 g(g+1) x (a3 + 2 a4 x)`,
//!   subject to `a3^3 - 4 a2 a3 a4 + 8 a1 a4^2 = 0`
//! * exponential: `L4 = (D^2 + a1 e^x + a0)^2 + a1 g(g+1) e^x`, written with
//!   `t = exp(x/2)` so that `e^x = t^2`
//!
//! Alongside the operators this module knows, for each (family, g, eps) pair
//! covered by an eigenfunction theorem, the monic polynomial `chi(z)` whose
//! roots are the eigenvalues and the multiplier `p` with `L4 (p phi) = z p phi`
//! for every `phi` in the kernel of the (possibly shifted) second-order operator.

use std::fmt;

use num_traits::Zero;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::rings::{rat, DiffRing, LaurentRing, MultiPoly, PolyRing, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cubic,
    Quartic,
    Exponential,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cubic => "cubic",
            Family::Quartic => "quartic",
            Family::Exponential => "exponential",
        }
    }

    /// Number of potential coefficients `a0..`.
    pub fn param_count(self) -> usize {
        match self {
            Family::Cubic => 4,
            Family::Quartic => 5,
            Family::Exponential => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubic" => Ok(Family::Cubic),
            "quartic" => Ok(Family::Quartic),
            "exponential" => Ok(Family::Exponential),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Family, potential coefficients (`None` = symbolic), genus-like index `g`
/// and the exponential-family shift selector `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub alpha: [Option<Rational>; 5],
    pub g: u32,
    pub eps: u8,
}

impl FamilySpec {
    /// All coefficients symbolic.
    pub fn symbolic(family: Family, g: u32) -> Self {
        Self {
            family,
            alpha: Default::default(),
            g,
            eps: 0,
        }
    }

    /// Coefficients `a0, a1, ...` given as rationals (shorter lists leave the
    /// remaining coefficients symbolic).
    pub fn specialized(family: Family, values: &[Rational], g: u32) -> Self {
        let mut alpha: [Option<Rational>; 5] = Default::default();
        for (slot, v) in alpha.iter_mut().zip(values) {
            *slot = Some(v.clone());
        }
        Self { family, alpha, g, eps: 0 }
    }

    pub fn with_eps(mut self, eps: u8) -> Self {
        self.eps = eps;
        self
    }

    pub fn is_symbolic(&self) -> bool {
        self.relevant_alphas().any(|i| self.alpha[i].is_none() && !self.eliminates_a1_at(i))
    }

    fn relevant_alphas(&self) -> std::ops::Range<usize> {
        0..self.family.param_count()
    }

    fn eliminates_a1_at(&self, i: usize) -> bool {
        i == 1 && self.eliminates_a1()
    }

    /// Quartic family with `a1` left free: it is eliminated through the constraint.
    pub fn eliminates_a1(&self) -> bool {
        self.family == Family::Quartic && self.alpha[1].is_none()
    }

    pub fn validate(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::InvalidSpec("g must be at least 1".into()));
        }
        if self.eps > 1 {
            return Err(Error::InvalidSpec("eps must be 0 or 1".into()));
        }
        if self.eps != 0 && self.family != Family::Exponential {
            return Err(Error::InvalidSpec("eps applies to the exponential family only".into()));
        }
        if self.family == Family::Cubic && self.alpha[4].as_ref().is_some_and(|a| !a.is_zero()) {
            return Err(Error::InvalidSpec("cubic family has no a4".into()));
        }
        if self.family == Family::Quartic {
            if self.alpha[4].as_ref().is_some_and(|a| a.is_zero()) {
                return Err(Error::ZeroLeadingPotential);
            }
            let known = [2, 3, 4].iter().all(|&i| self.alpha[i].is_some());
            match (&self.alpha[1], known) {
                (Some(a1), true) => {
                    let (a2, a3, a4) = (self.a(2), self.a(3), self.a(4));
                    let lhs = &a3 * &a3 * &a3 - rat(4, 1) * &a2 * &a3 * &a4 + rat(8, 1) * a1 * &a4 * &a4;
                    if !lhs.is_zero() {
                        return Err(Error::QuarticConstraint);
                    }
                }
                (Some(_), false) => {
                    return Err(Error::InvalidSpec(
                        "a1 is determined by the constraint when a2, a3 or a4 is symbolic; leave it free".into(),
                    ))
                }
                (None, _) => {}
            }
        }
        Ok(())
    }

    fn a(&self, i: usize) -> Rational {
        self.alpha[i].clone().expect("checked by caller")
    }

    /// Coefficient ring for the polynomial families: `a4` is inverted when it
    /// stays symbolic in the quartic family.
    pub fn poly_ring(&self) -> PolyRing {
        if self.family == Family::Quartic && self.alpha[4].is_none() {
            PolyRing::with_invertible(&[Var::A4])
        } else {
            PolyRing::new()
        }
    }

    /// Applies the specialization (and the `a1` elimination for the quartic
    /// family) to a template in `x, a0..a4, z`.
    pub fn substitute(&self, template: &MultiPoly) -> Result<MultiPoly> {
        let values: Vec<(Var, Rational)> = self
            .relevant_alphas()
            .filter_map(|i| self.alpha[i].clone().map(|v| (Var::alpha(i), v)))
            .collect();
        let mut out = template.specialize(&values)?;
        if self.eliminates_a1() {
            let a1 = self.substitute_plain(&alpha1_elimination())?;
            out = out.substitute(Var::A1, &a1)?;
        }
        Ok(out)
    }

    fn substitute_plain(&self, template: &MultiPoly) -> Result<MultiPoly> {
        let values: Vec<(Var, Rational)> = self
            .relevant_alphas()
            .filter_map(|i| self.alpha[i].clone().map(|v| (Var::alpha(i), v)))
            .collect();
        template.specialize(&values)
    }

    /// Parameters as `name -> "num/den"` (symbolic ones as `"symbolic"`).
    pub fn param_strings(&self) -> std::collections::BTreeMap<String, String> {
        let mut out = std::collections::BTreeMap::new();
        for i in self.relevant_alphas() {
            let v = match &self.alpha[i] {
                Some(q) => q.to_string(),
                None if self.eliminates_a1_at(i) => "eliminated".to_string(),
                None => "symbolic".to_string(),
            };
            out.insert(format!("a{i}"), v);
        }
        out
    }

    pub fn identity_label(&self) -> String {
        match self.family {
            Family::Exponential => format!("{}/g{}/eps{}", self.family, self.g, self.eps),
            _ => format!("{}/g{}", self.family, self.g),
        }
    }

    fn not_covered(&self) -> Error {
        Error::NotCovered {
            family: self.family.name().to_string(),
            g: self.g,
        }
    }

    /// Whether an eigenfunction theorem covers this (family, g, eps).
    pub fn is_covered(&self) -> bool {
        match self.family {
            Family::Cubic => matches!(self.g, 2 | 4),
            Family::Quartic => matches!(self.g, 1 | 2),
            Family::Exponential => self.g >= 1,
        }
    }
}

/// `a1 = (4 a2 a3 a4 - a3^3) / (8 a4^2)`.
pub fn solve_quartic_constraint(a2: &Rational, a3: &Rational, a4: &Rational) -> Result<Rational> {
    if a4.is_zero() {
        return Err(Error::ZeroLeadingPotential);
    }
    Ok((rat(4, 1) * a2 * a3 * a4 - a3 * a3 * a3) / (rat(8, 1) * a4 * a4))
}

/// The same elimination as a Laurent polynomial in `a4`.
pub fn alpha1_elimination() -> MultiPoly {
    let num = &(&(&a(2) * &a(3)) * &a(4)).scale(&rat(4, 1)) - &a(3).pow(3);
    &num * &MultiPoly::var_pow(Var::A4, -2).scale(&rat(1, 8))
}

/// `a3^3 - 4 a2 a3 a4 + 8 a1 a4^2`.
pub fn quartic_constraint() -> MultiPoly {
    let t1 = a(3).pow(3);
    let t2 = (&(&a(2) * &a(3)) * &a(4)).scale(&rat(4, 1));
    let t3 = (&a(1) * &a(4).pow(2)).scale(&rat(8, 1));
    &(&t1 - &t2) + &t3
}

fn a(i: usize) -> MultiPoly {
    MultiPoly::var(Var::alpha(i))
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

fn z() -> MultiPoly {
    MultiPoly::var(Var::Z)
}

fn c(n: i64) -> Rational {
    rat(n, 1)
}

fn sum(parts: &[MultiPoly]) -> MultiPoly {
    parts.iter().fold(MultiPoly::zero(), |acc, p| &acc + p)
}

/// Potential `V(x)` of the polynomial families, as a template.
pub fn potential_template(family: Family) -> Result<MultiPoly> {
    let cubic = sum(&[&a(3) * &x().pow(3), &a(2) * &x().pow(2), &a(1) * &x(), a(0)]);
    match family {
        Family::Cubic => Ok(cubic),
        Family::Quartic => Ok(&cubic + &(&a(4) * &x().pow(4))),
        Family::Exponential => Err(Error::InvalidSpec("exponential potential is not polynomial".into())),
    }
}

/// Order-zero term added to `L2^2` for the polynomial families.
pub fn l4_extra_template(family: Family, g: u32) -> Result<MultiPoly> {
    let gg = i64::from(g) * (i64::from(g) + 1);
    match family {
        Family::Cubic => Ok((&a(3) * &x()).scale(&c(gg))),
        Family::Quartic => {
            let inner = &a(3) + &(&a(4) * &x()).scale(&c(2));
            Ok((&x() * &inner).scale(&c(2 * gg)))
        }
        Family::Exponential => Err(Error::InvalidSpec("exponential extra term lives in the Laurent ring".into())),
    }
}

/// Monic eigenvalue polynomial, coefficients ascending in `z` over the
/// (specialized) parameter ring.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub coeffs: Vec<MultiPoly>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// As a polynomial in the symbol `z`.
    pub fn to_multipoly(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, cf) in self.coeffs.iter().enumerate() {
            out = &out + &(cf * &MultiPoly::var_pow(Var::Z, k as i32));
        }
        out
    }

    fn from_multipoly(p: &MultiPoly) -> Result<Self> {
        Ok(Self {
            coeffs: p.coefficients_in(Var::Z)?,
        })
    }

    /// Rational coefficients, when every parameter is specialized.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_constant()).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly())
    }
}

fn char_template(spec: &FamilySpec) -> Result<MultiPoly> {
    let g = spec.g;
    match (spec.family, g) {
        (Family::Cubic, 2) => Ok(sum(&[z().pow(2), (&a(2) * &z()).scale(&c(4)), (&a(1) * &a(3)).scale(&c(12))])),
        (Family::Cubic, 4) => {
            let lin = &a(2).pow(2).scale(&c(4)) + &(&a(1) * &a(3)).scale(&c(13));
            let cst = &(&a(0) * &a(3)).scale(&c(7)) + &(&a(1) * &a(2)).scale(&c(2));
            Ok(sum(&[
                z().pow(3),
                (&a(2) * &z().pow(2)).scale(&c(20)),
                (&lin * &z()).scale(&c(16)),
                (&a(3) * &cst).scale(&c(320)),
            ]))
        }
        (Family::Quartic, 1) => {
            // z - (a3^2 / a4 - 4 a2)
            let value = &(&a(3).pow(2) * &MultiPoly::var_pow(Var::A4, -1)) - &a(2).scale(&c(4));
            Ok(&z() - &value)
        }
        (Family::Quartic, 2) => {
            let lin = &(&a(3).pow(2) * &MultiPoly::var_pow(Var::A4, -1)).scale(&c(3)) - &a(2).scale(&c(16));
            Ok(sum(&[
                z().pow(2),
                -&(&lin * &z()),
                (&a(1) * &a(3)).scale(&c(24)),
                (&a(0) * &a(4)).scale(&c(192)),
            ]))
        }
        (Family::Exponential, _) => {
            // z + (1/4) s^2 (4 a0 + s^2), s = g + eps
            let s = i64::from(g) + i64::from(spec.eps);
            let inner = &a(0).scale(&c(4)) + &MultiPoly::int(s * s);
            Ok(&z() + &inner.scale(&rat(s * s, 4)))
        }
        _ => Err(spec.not_covered()),
    }
}

/// Eigenvalue polynomial of the theorem covering `spec`.
pub fn char_poly_z(spec: &FamilySpec) -> Result<CharPoly> {
    spec.validate()?;
    let t = char_template(spec)?;
    let poly = if spec.family == Family::Exponential {
        spec.substitute_plain(&t)?
    } else {
        spec.substitute(&t)?
    };
    let cp = CharPoly::from_multipoly(&poly)?;
    debug_assert!(cp.is_monic());
    Ok(cp)
}

/// Eigenfunction multiplier: a polynomial in `x, a, z` or a power of `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier {
    Polynomial(MultiPoly),
    TPower(i64),
}

fn multiplier_template(spec: &FamilySpec) -> Result<Multiplier> {
    let p = match (spec.family, spec.g) {
        (Family::Cubic, 2) => sum(&[(&a(3) * &x()).scale(&c(6)), z(), a(2).scale(&c(4))]),
        (Family::Cubic, 4) => {
            let lin = &z() + &a(2).scale(&c(16));
            sum(&[
                (&a(3).pow(2) * &x().pow(2)).scale(&c(280)),
                (&(&a(3) * &lin) * &x()).scale(&c(20)),
                z().pow(2),
                (&a(2) * &z()).scale(&c(20)),
                a(2).pow(2).scale(&c(64)),
                (&a(1) * &a(3)).scale(&c(168)),
            ])
        }
        (Family::Quartic, 1) => &(&a(4) * &x()).scale(&c(4)) + &a(3),
        (Family::Quartic, 2) => sum(&[
            (&a(4).pow(2) * &x().pow(2)).scale(&c(24)),
            (&(&a(3) * &a(4)) * &x()).scale(&c(12)),
            a(3).pow(2).scale(&c(-3)),
            &a(4) * &(&z() + &a(2).scale(&c(16))),
        ]),
        (Family::Exponential, g) => {
            return Ok(if spec.eps == 0 {
                Multiplier::TPower(i64::from(g))
            } else {
                Multiplier::TPower(-(i64::from(g) + 1))
            })
        }
        _ => return Err(spec.not_covered()),
    };
    Ok(Multiplier::Polynomial(p))
}

/// Multiplier `p` for `spec`, with parameters substituted; `z` stays symbolic.
pub fn multiplier_p(spec: &FamilySpec) -> Result<Multiplier> {
    spec.validate()?;
    match multiplier_template(spec)? {
        Multiplier::Polynomial(p) => Ok(Multiplier::Polynomial(spec.substitute(&p)?)),
        t => Ok(t),
    }
}

/// Operators of a family, over the ring appropriate to it.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyOp {
    Polynomial(DiffOp<PolyRing>),
    Exponential(DiffOp<LaurentRing<PolyRing>>),
}

impl FamilyOp {
    pub fn polynomial(self) -> Option<DiffOp<PolyRing>> {
        match self {
            FamilyOp::Polynomial(op) => Some(op),
            FamilyOp::Exponential(_) => None,
        }
    }

    pub fn exponential(self) -> Option<DiffOp<LaurentRing<PolyRing>>> {
        match self {
            FamilyOp::Exponential(op) => Some(op),
            FamilyOp::Polynomial(_) => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            FamilyOp::Polynomial(op) => op.order(),
            FamilyOp::Exponential(op) => op.order(),
        }
    }
}

impl fmt::Display for FamilyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyOp::Polynomial(op) => write!(f, "{op}"),
            FamilyOp::Exponential(op) => write!(f, "{op}"),
        }
    }
}

/// Ring `Q[a0, a1][t, 1/t]` of the exponential family.
pub fn exponential_ring() -> LaurentRing<PolyRing> {
    LaurentRing::new(PolyRing::new())
}

fn exp_param(spec: &FamilySpec, i: usize) -> MultiPoly {
    match &spec.alpha[i] {
        Some(v) => MultiPoly::constant(v.clone()),
        None => a(i),
    }
}

/// `D^2 + V`, with `V` shifted by `(g + eps)^2 / 4` in the exponential family
/// when `shifted` is set.
pub fn make_schrodinger(spec: &FamilySpec, shifted: bool) -> Result<FamilyOp> {
    spec.validate()?;
    match spec.family {
        Family::Cubic | Family::Quartic => {
            let v = spec.substitute(&potential_template(spec.family)?)?;
            Ok(FamilyOp::Polynomial(DiffOp::new(
                spec.poly_ring(),
                vec![v, MultiPoly::zero(), MultiPoly::one()],
            )))
        }
        Family::Exponential => {
            let ring = exponential_ring();
            let mut cst = exp_param(spec, 0);
            if shifted {
                let s = i64::from(spec.g) + i64::from(spec.eps);
                cst = &cst + &MultiPoly::constant(rat(s * s, 4));
            }
            let v = ring.add(&ring.monomial(exp_param(spec, 1), 2), &ring.embed(&cst));
            Ok(FamilyOp::Exponential(DiffOp::new(ring.clone(), vec![v, ring.zero(), ring.one()])))
        }
    }
}

/// `L2^2` plus the family's order-zero correction (with the unshifted `L2`).
pub fn make_l4(spec: &FamilySpec) -> Result<FamilyOp> {
    match make_schrodinger(spec, false)? {
        FamilyOp::Polynomial(l2) => {
            let extra = spec.substitute(&l4_extra_template(spec.family, spec.g)?)?;
            let sq = l2.compose(&l2)?;
            Ok(FamilyOp::Polynomial(sq.add(&DiffOp::scalar(*l2.ring(), extra))?))
        }
        FamilyOp::Exponential(l2) => {
            let ring = l2.ring().clone();
            let gg = i64::from(spec.g) * (i64::from(spec.g) + 1);
            let extra = ring.monomial(exp_param(spec, 1).scale(&c(gg)), 2);
            let sq = l2.compose(&l2)?;
            Ok(FamilyOp::Exponential(sq.add(&DiffOp::scalar(ring, extra))?))
        }
    }
}

/// Specialized `L4` with rational coefficients (for the centralizer search).
pub fn rational_l4(spec: &FamilySpec) -> Result<DiffOp<PolyRing>> {
    if spec.is_symbolic() || spec.family == Family::Exponential {
        return Err(Error::InvalidSpec("rational L4 needs a specialized polynomial family".into()));
    }
    make_l4(spec)?
        .polynomial()
        .ok_or_else(|| Error::Internal("polynomial family expected".into()))
}
