//! Exact verification of the eigenfunction identities and of the
//! commutativity-modulo-`L2` property, by right division by `L2`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centralizer;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::families::{self, Family, FamilySpec, Multiplier};
use crate::rings::{
    split_rational_roots, DiffRing, FractionField, LaurentRing, MultiPoly, PolyRing, QuotientRing, Rational, Rationals, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Specialized,
}

/// Outcome of one exact identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub mode: Mode,
    pub params: BTreeMap<String, String>,
    pub remainder_is_zero: bool,
    pub witness_order: Option<usize>,
    pub witness: Option<String>,
    pub remainder: Option<String>,
    pub elapsed_ms: f64,
    pub tool_version: String,
    pub seed: Option<u64>,
}

impl VerificationReport {
    fn new(identity_id: String, mode: Mode, params: BTreeMap<String, String>) -> Self {
        Self {
            identity_id,
            mode,
            params,
            remainder_is_zero: false,
            witness_order: None,
            witness: None,
            remainder: None,
            elapsed_ms: 0.0,
            tool_version: crate::TOOL_VERSION.to_string(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        self
    }
}

/// Which operator is conjugated by the multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryTarget {
    L4,
    L4g2,
}

impl CorollaryTarget {
    pub fn name(self) -> &'static str {
        match self {
            CorollaryTarget::L4 => "l4",
            CorollaryTarget::L4g2 => "l4g2",
        }
    }
}

/// `N = L4 o p - z p`, right-divided by the monic `l2`. The division is
/// re-checked by reconstructing `N`.
fn divide_eigen<R: DiffRing>(
    l4: &DiffOp<R>,
    l2: &DiffOp<R>,
    p: &R::Elem,
    z: &R::Elem,
) -> Result<(DiffOp<R>, DiffOp<R>)> {
    let ring = l4.ring().clone();
    let p_op = DiffOp::scalar(ring.clone(), p.clone());
    let zp = DiffOp::scalar(ring.clone(), ring.mul(z, p));
    let n = l4.compose(&p_op)?.sub(&zp)?;
    divide_checked(&n, l2)
}

/// Right division followed by the independent reconstruction check.
pub fn divide_checked<R: DiffRing>(n: &DiffOp<R>, d: &DiffOp<R>) -> Result<(DiffOp<R>, DiffOp<R>)> {
    let (q, r) = n.right_divide(d)?;
    if q.compose(d)?.add(&r)? != *n {
        return Err(Error::Internal("division reconstruction failed".into()));
    }
    Ok((q, r))
}

fn fill<R: DiffRing>(report: &mut VerificationReport, q: &DiffOp<R>, r: &DiffOp<R>) {
    report.remainder_is_zero = r.is_zero();
    report.witness_order = q.order();
    report.witness = Some(q.to_string());
    report.remainder = if r.is_zero() { None } else { Some(r.to_string()) };
}

fn mode_of(spec: &FamilySpec) -> Mode {
    if spec.is_symbolic() {
        Mode::Symbolic
    } else {
        Mode::Specialized
    }
}

/// Quotient and remainder of `L4 o p - z p` by `L2`. In the polynomial
/// families `z` appears as the symbol `Var::Z`, reduced modulo the eigenvalue
/// polynomial (or substituted when it is linear).
#[derive(Debug, Clone, PartialEq)]
pub enum EigenDivision {
    Polynomial {
        quotient: DiffOp<PolyRing>,
        remainder: DiffOp<PolyRing>,
    },
    Exponential {
        quotient: DiffOp<LaurentRing<PolyRing>>,
        remainder: DiffOp<LaurentRing<PolyRing>>,
    },
}

impl EigenDivision {
    pub fn remainder_is_zero(&self) -> bool {
        match self {
            EigenDivision::Polynomial { remainder, .. } => remainder.is_zero(),
            EigenDivision::Exponential { remainder, .. } => remainder.is_zero(),
        }
    }
}

fn lift_from_quotient(ring: &PolyRing, op: &DiffOp<QuotientRing<PolyRing>>) -> DiffOp<PolyRing> {
    let coeffs = op
        .coeffs()
        .iter()
        .map(|c| {
            c.iter().enumerate().fold(MultiPoly::zero(), |acc, (k, ck)| {
                &acc + &(ck * &MultiPoly::var_pow(Var::Z, k as i32))
            })
        })
        .collect();
    DiffOp::new(*ring, coeffs)
}

/// Right division of `L4 o p - z p` by `L2` (shifted `L2` in the exponential
/// family), with `z` adjoined through its eigenvalue polynomial.
pub fn eigen_division(spec: &FamilySpec) -> Result<EigenDivision> {
    spec.validate()?;
    let chi = families::char_poly_z(spec)?;
    let multiplier = families::multiplier_p(spec)?;
    match (spec.family, multiplier) {
        (Family::Exponential, Multiplier::TPower(k)) => {
            let l2 = families::make_schrodinger(spec, true)?.exponential().expect("exponential");
            let l4 = families::make_l4(spec)?.exponential().expect("exponential");
            let ring = l4.ring().clone();
            let z = ring.embed(&(-&chi.coeffs[0]));
            let (quotient, remainder) = divide_eigen(&l4, &l2, &ring.t_pow(k), &z)?;
            Ok(EigenDivision::Exponential { quotient, remainder })
        }
        (_, Multiplier::Polynomial(p)) => {
            let l2 = families::make_schrodinger(spec, false)?.polynomial().expect("polynomial");
            let l4 = families::make_l4(spec)?.polynomial().expect("polynomial");
            let base = *l4.ring();
            if chi.degree() == 1 {
                let z = -&chi.coeffs[0];
                let p = p.substitute(Var::Z, &z)?;
                let (quotient, remainder) = divide_eigen(&l4, &l2, &p, &z)?;
                Ok(EigenDivision::Polynomial { quotient, remainder })
            } else {
                let ring = QuotientRing::new(base, chi.coeffs.clone())?;
                let embed = |a: &MultiPoly| Ok(ring.embed(a));
                let l2 = l2.map_ring(ring.clone(), embed)?;
                let l4 = l4.map_ring(ring.clone(), embed)?;
                let p = ring.reduce(&p.coefficients_in(Var::Z)?);
                let (q, r) = divide_eigen(&l4, &l2, &p, &ring.generator())?;
                Ok(EigenDivision::Polynomial {
                    quotient: lift_from_quotient(&base, &q),
                    remainder: lift_from_quotient(&base, &r),
                })
            }
        }
        (_, Multiplier::TPower(_)) => Err(Error::Internal("t-power multiplier outside exponential family".into())),
    }
}

/// Checks `L4 (p phi) = z p phi` on the kernel of `L2` as the exact identity
/// `L4 o p - z p = Q o L2`.
pub fn verify_eigen_identity(spec: &FamilySpec) -> Result<VerificationReport> {
    let started = Instant::now();
    let division = eigen_division(spec)?;
    let mut report = VerificationReport::new(
        format!("eigen/{}", spec.identity_label()),
        mode_of(spec),
        spec.param_strings(),
    );
    match &division {
        EigenDivision::Polynomial { quotient, remainder } => fill(&mut report, quotient, remainder),
        EigenDivision::Exponential { quotient, remainder } => fill(&mut report, quotient, remainder),
    }
    Ok(report.finish(started))
}

/// Checks `[A, B] = 0` exactly; the witness is the commutator.
pub fn verify_commutation<R: DiffRing>(a: &DiffOp<R>, b: &DiffOp<R>) -> Result<VerificationReport> {
    let started = Instant::now();
    let c = a.commutator(b)?;
    let mut report = VerificationReport::new("commutation".into(), Mode::Specialized, BTreeMap::new());
    report.remainder_is_zero = c.is_zero();
    report.witness_order = c.order();
    report.witness = Some(c.to_string());
    report.remainder = if c.is_zero() { None } else { Some(c.to_string()) };
    Ok(report.finish(started))
}

/// Per-eigenvalue outcome of the commutativity-modulo-`L2` check.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryBranch {
    /// The eigenvalue, or its minimal polynomial when it is not rational.
    pub eigenvalue: String,
    pub remainder_is_zero: bool,
    pub witness_order: Option<usize>,
    pub witness: String,
    pub remainder: Option<String>,
}

/// Polynomial in `x` with coefficients in `Q[z]`, realized in `K[x]` through
/// `lift`.
fn to_field_poly<K: DiffRing>(
    p: &MultiPoly,
    lift: &dyn Fn(&MultiPoly) -> Result<K::Elem>,
) -> Result<Vec<K::Elem>> {
    p.coefficients_in(Var::X)?.iter().map(lift).collect()
}

/// `[p^{-1} L p, L2] = B o L2` over `K(x)`. Returns `None` when `p = 0`.
fn corollary_in_field<K: DiffRing>(
    k: K,
    lift: &dyn Fn(&MultiPoly) -> Result<K::Elem>,
    l2: &DiffOp<PolyRing>,
    l: &DiffOp<PolyRing>,
    p: &MultiPoly,
) -> Result<Option<(DiffOp<FractionField<K>>, DiffOp<FractionField<K>>)>> {
    let field = FractionField::new(k);
    let to_frac = |a: &MultiPoly| -> Result<_> { Ok(field.from_poly(to_field_poly::<K>(a, lift)?)) };
    let p_frac = to_frac(p)?;
    if field.is_zero(&p_frac) {
        return Ok(None);
    }
    let l2f = l2.map_ring(field.clone(), to_frac)?;
    let lf = l.map_ring(field.clone(), to_frac)?;
    let conj = lf.conjugate_by_unit(&p_frac)?;
    let c = conj.commutator(&l2f)?;
    let (b, r) = divide_checked(&c, &l2f)?;
    Ok(Some((b, r)))
}

fn branch_from<R: DiffRing>(eigenvalue: String, b: &DiffOp<R>, r: &DiffOp<R>) -> CorollaryBranch {
    CorollaryBranch {
        eigenvalue,
        remainder_is_zero: r.is_zero(),
        witness_order: b.order(),
        witness: b.to_string(),
        remainder: if r.is_zero() { None } else { Some(r.to_string()) },
    }
}

/// Runs the commutativity-modulo-`L2` check for every eigenvalue: each
/// distinct rational root in `Q(x)`, and the irreducible remainder of the
/// eigenvalue polynomial in `Q[z]/(f)(x)`. Roots where the multiplier vanishes
/// identically are skipped.
pub fn corollary_branches(
    spec: &FamilySpec,
    target: CorollaryTarget,
    partner: Option<&DiffOp<PolyRing>>,
) -> Result<Vec<CorollaryBranch>> {
    spec.validate()?;
    if spec.family == Family::Exponential || spec.is_symbolic() {
        return Err(Error::InvalidSpec(
            "the commutativity check needs a polynomial family with rational parameters".into(),
        ));
    }
    let chi = families::char_poly_z(spec)?;
    let Multiplier::Polynomial(p) = families::multiplier_p(spec)? else {
        return Err(Error::Internal("polynomial multiplier expected".into()));
    };
    let l2 = families::make_schrodinger(spec, false)?.polynomial().expect("polynomial");
    let l4 = families::rational_l4(spec)?;
    let l = match target {
        CorollaryTarget::L4 => l4,
        CorollaryTarget::L4g2 => match partner {
            Some(m) => m.clone(),
            None => {
                let order = 4 * spec.g as usize + 2;
                centralizer::find_with_schedule(&l4, spec.g)?
                    .map(|found| found.operator)
                    .ok_or_else(|| Error::Internal(format!("no commuting operator of order {order} found")))?
            }
        },
    };
    let chi_q = chi
        .rational_coeffs()
        .ok_or_else(|| Error::InvalidSpec("eigenvalue polynomial must have rational coefficients".into()))?;
    let split = split_rational_roots(&chi_q)?;
    let mut branches = Vec::new();
    for (root, _multiplicity) in &split.roots {
        let lift = |c: &MultiPoly| -> Result<Rational> {
            c.substitute(Var::Z, &MultiPoly::constant(root.clone()))?
                .as_constant()
                .ok_or_else(|| Error::Internal("non-constant coefficient".into()))
        };
        if let Some((b, r)) = corollary_in_field(Rationals, &lift, &l2, &l, &p)? {
            branches.push(branch_from(root.to_string(), &b, &r));
        }
    }
    if split.cofactor.len() > 1 {
        let field = QuotientRing::new(Rationals, split.cofactor.clone())?;
        let lift = |c: &MultiPoly| -> Result<Vec<Rational>> {
            let zc = c
                .coefficients_in(Var::Z)?
                .iter()
                .map(|t| t.as_constant().ok_or_else(|| Error::Internal("non-constant coefficient".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(field.reduce(&zc))
        };
        let label = format!("root of {}", MultiPoly::from_terms(split.cofactor.iter().enumerate().map(|(k, c)| {
            (crate::rings::Monomial::var(Var::Z, k as i32), c.clone())
        })));
        if let Some((b, r)) = corollary_in_field(field.clone(), &lift, &l2, &l, &p)? {
            branches.push(branch_from(label, &b, &r));
        }
    }
    if branches.is_empty() {
        return Err(Error::DegenerateMultiplier);
    }
    Ok(branches)
}

/// Aggregated report: the remainder is zero iff it is zero on every branch.
pub fn verify_corollary1(
    spec: &FamilySpec,
    target: CorollaryTarget,
    partner: Option<&DiffOp<PolyRing>>,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let branches = corollary_branches(spec, target, partner)?;
    let mut report = VerificationReport::new(
        format!("modL2/{}/{}", target.name(), spec.identity_label()),
        Mode::Specialized,
        spec.param_strings(),
    );
    report.remainder_is_zero = branches.iter().all(|b| b.remainder_is_zero);
    report.witness_order = branches.iter().filter_map(|b| b.witness_order).max();
    report.witness = Some(
        branches
            .iter()
            .map(|b| format!("z = {}: B = {}", b.eigenvalue, b.witness))
            .collect::<Vec<_>>()
            .join("; "),
    );
    let failures: Vec<String> = branches
        .iter()
        .filter_map(|b| b.remainder.as_ref().map(|r| format!("z = {}: {}", b.eigenvalue, r)))
        .collect();
    report.remainder = if failures.is_empty() { None } else { Some(failures.join("; ")) };
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn cubic_g2_symbolic() {
        let report = verify_eigen_identity(&FamilySpec::symbolic(Family::Cubic, 2)).unwrap();
        assert!(report.remainder_is_zero, "{:?}", report.remainder);
        assert_eq!(report.mode, Mode::Symbolic);
        assert_eq!(report.witness_order, Some(2));
    }

    #[test]
    fn cubic_g2_nilpotent_eigenvalue() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 2);
        let report = verify_eigen_identity(&spec).unwrap();
        assert!(report.remainder_is_zero);
        assert_eq!(report.mode, Mode::Specialized);
    }

    #[test]
    fn exponential_g1_symbolic() {
        let report = verify_eigen_identity(&FamilySpec::symbolic(Family::Exponential, 1)).unwrap();
        assert!(report.remainder_is_zero);
    }

    #[test]
    fn wrong_multiplier_is_reported_not_hidden() {
        // p = 6x + z + 4a2 with the constant 4 replaced by 5 must fail.
        let spec = FamilySpec::symbolic(Family::Cubic, 2);
        let chi = families::char_poly_z(&spec).unwrap();
        let l2 = families::make_schrodinger(&spec, false).unwrap().polynomial().unwrap();
        let l4 = families::make_l4(&spec).unwrap().polynomial().unwrap();
        let ring = QuotientRing::new(*l4.ring(), chi.coeffs).unwrap();
        let embed = |a: &MultiPoly| Ok(ring.embed(a));
        let l2 = l2.map_ring(ring.clone(), embed).unwrap();
        let l4 = l4.map_ring(ring.clone(), embed).unwrap();
        let bad = &(&(&MultiPoly::var(Var::A3) * &MultiPoly::var(Var::X)).scale(&q(6)) + &MultiPoly::var(Var::Z))
            + &MultiPoly::var(Var::A2).scale(&q(5));
        let p = ring.reduce(&bad.coefficients_in(Var::Z).unwrap());
        let (_, r) = divide_eigen(&l4, &l2, &p, &ring.generator()).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn commutation_reports() {
        let ring = PolyRing::new();
        let l2 = DiffOp::new(ring, vec![MultiPoly::var(Var::X).pow(3), MultiPoly::zero(), MultiPoly::one()]);
        assert!(verify_commutation(&l2.pow(2), &l2).unwrap().remainder_is_zero);
        let d = DiffOp::d_pow(ring, 1);
        let x = DiffOp::scalar(ring, MultiPoly::var(Var::X));
        let report = verify_commutation(&d, &x).unwrap();
        assert!(!report.remainder_is_zero);
        assert_eq!(report.witness_order, Some(0));
    }

    #[test]
    fn corollary_without_a3_is_trivial() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(1), q(2), q(3), q(0)], 2);
        let branches = corollary_branches(&spec, CorollaryTarget::L4, None).unwrap();
        for b in &branches {
            assert!(b.remainder_is_zero);
            assert_eq!(b.witness_order, None);
        }
    }

    #[test]
    fn corollary_dixmier_g2() {
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 2);
        let branches = corollary_branches(&spec, CorollaryTarget::L4, None).unwrap();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].eigenvalue, "0");
        assert!(branches[0].remainder_is_zero);
        let order = branches[0].witness_order.expect("nonzero witness");
        assert!(order <= 3);
    }

    #[test]
    fn corollary_with_irreducible_eigenvalue_polynomial() {
        // chi = z^2 + 12
        let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(1), q(0), q(1)], 2);
        let report = verify_corollary1(&spec, CorollaryTarget::L4, None).unwrap();
        assert!(report.remainder_is_zero, "{:?}", report.remainder);
        assert!(report.witness.unwrap().contains("root of"));
    }

    #[test]
    fn corollary_rejects_symbolic() {
        let err = verify_corollary1(&FamilySpec::symbolic(Family::Cubic, 2), CorollaryTarget::L4, None).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }
}
