//! Seeded property runs for the algebraic laws the exact checks rely on.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use commuting_core::centralizer::find_with_schedule;
use commuting_core::families::{rational_l4, Family, FamilySpec};
use commuting_core::rings::{
    normalize_fraction, DiffRing, FractionField, LaurentRing, Monomial, MultiPoly, PolyRing, QuotientRing, Rational,
    Rationals, Var,
};
use commuting_core::spectral::{action_matrix, series_kernel_basis};
use commuting_core::DiffOp;

pub const LEIBNIZ_CASES: u32 = 1000;
pub const DIVISION_CASES: u32 = 500;
pub const JACOBI_CASES: u32 = 200;
pub const HOMOMORPHISM_CASES: u32 = 500;
pub const TRUNCATION_CASES: u32 = 12;

const ALL: &[Var] = &[Var::X, Var::A0, Var::A1, Var::A2, Var::A3, Var::A4, Var::Z];
const PARAMS: &[Var] = &[Var::A0, Var::A1, Var::A2, Var::A3];
const X_ONLY: &[Var] = &[Var::X];
const X_AND_A: &[Var] = &[Var::X, Var::A2, Var::A3];

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn multipoly_in(vars: &'static [Var], max_exp: i32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let monomial = prop::collection::vec(0..=max_exp, vars.len()).prop_map(move |exps| {
        let mut m = Monomial::one();
        for (v, e) in vars.iter().zip(exps) {
            m.0[v.index()] = e;
        }
        m
    });
    prop::collection::vec((monomial, rational()), 0..=max_terms).prop_map(MultiPoly::from_terms)
}

/// `Q[params, x]/(z^2 + 4 a2 z + 12 a1 a3)`.
fn chi_ring() -> QuotientRing<PolyRing> {
    let a = |v: Var| MultiPoly::var(v);
    let c0 = (&a(Var::A1) * &a(Var::A3)).scale(&Rational::from_integer(12.into()));
    let c1 = a(Var::A2).scale(&Rational::from_integer(4.into()));
    QuotientRing::new(PolyRing::new(), vec![c0, c1, MultiPoly::one()]).expect("monic modulus")
}

fn laurent_elem() -> impl Strategy<Value = BTreeMap<i64, MultiPoly>> {
    prop::collection::btree_map(-3i64..=3, multipoly_in(&[Var::A0, Var::A1], 2, 2), 0..=3)
        .prop_map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

fn frac_elem() -> impl Strategy<Value = commuting_core::rings::Frac<Rational>> {
    let qpoly = || prop::collection::vec(rational(), 0..=3);
    (qpoly(), qpoly()).prop_filter_map("nonzero denominator", |(n, d)| normalize_fraction(n, d).ok())
}

fn operator(vars: &'static [Var], max_order: usize) -> impl Strategy<Value = DiffOp<PolyRing>> {
    prop::collection::vec(multipoly_in(vars, 3, 3), 0..=max_order + 1)
        .prop_map(|coeffs| DiffOp::new(PolyRing::new(), coeffs))
}

fn monic_operator(vars: &'static [Var], max_order: usize) -> impl Strategy<Value = DiffOp<PolyRing>> {
    prop::collection::vec(multipoly_in(vars, 3, 3), 0..=max_order).prop_map(|mut coeffs| {
        coeffs.push(MultiPoly::one());
        DiffOp::new(PolyRing::new(), coeffs)
    })
}

fn leibniz<R: DiffRing>(r: &R, a: &R::Elem, b: &R::Elem) -> Result<(), TestCaseError> {
    let lhs = r.derive(&r.mul(a, b));
    let rhs = r.add(&r.mul(&r.derive(a), b), &r.mul(a, &r.derive(b)));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Outcome of one property: cases run, or the shrunk counterexample.
#[derive(Debug, Clone)]
pub struct PropertyRun {
    pub name: &'static str,
    pub cases: u32,
    pub failure: Option<String>,
}

fn run<S, F>(name: &'static str, cases: u32, seed: u64, strategy: S, test: F) -> PropertyRun
where
    S: Strategy,
    S::Value: Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&(name.len() as u64).to_le_bytes());
    for (i, b) in name.bytes().enumerate() {
        bytes[16 + i % 16] ^= b;
    }
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes));
    let failure = runner.run(&strategy, test).err().map(|e| e.to_string());
    PropertyRun { name, cases, failure }
}

pub fn run_all(seed: u64) -> Vec<PropertyRun> {
    let mp = || multipoly_in(ALL, 2, 4);
    let quot = || prop::collection::vec(multipoly_in(&[Var::X, Var::A1, Var::A2, Var::A3], 2, 3), 2);
    let mut out = vec![
        run("leibniz, polynomial ring", LEIBNIZ_CASES, seed, (mp(), mp()), |(a, b)| {
            leibniz(&PolyRing::new(), &a, &b)
        }),
        run("leibniz, quotient ring", LEIBNIZ_CASES, seed, (quot(), quot()), |(a, b)| {
            let r = chi_ring();
            leibniz(&r, &r.reduce(&a), &r.reduce(&b))
        }),
        run("leibniz, twisted Laurent ring", LEIBNIZ_CASES, seed, (laurent_elem(), laurent_elem()), |(a, b)| {
            leibniz(&LaurentRing::new(PolyRing::new()), &a, &b)
        }),
        run("leibniz, fraction field", LEIBNIZ_CASES, seed, (frac_elem(), frac_elem()), |(a, b)| {
            leibniz(&FractionField::new(Rationals), &a, &b)
        }),
    ];
    out.push(run(
        "right division reconstructs",
        DIVISION_CASES,
        seed,
        (operator(X_AND_A, 6), monic_operator(X_AND_A, 3)),
        |(n, d)| {
            let (q, r) = n.right_divide(&d).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(q.compose(&d).unwrap().add(&r).unwrap(), n);
            prop_assert!(r.order().is_none_or(|o| o < d.order().unwrap()));
            Ok(())
        },
    ));
    out.push(run(
        "jacobi identity",
        JACOBI_CASES,
        seed,
        (operator(X_ONLY, 3), operator(X_ONLY, 3), operator(X_ONLY, 3)),
        |(a, b, c)| {
            let t1 = a.commutator(&b).unwrap().commutator(&c).unwrap();
            let t2 = b.commutator(&c).unwrap().commutator(&a).unwrap();
            let t3 = c.commutator(&a).unwrap().commutator(&b).unwrap();
            prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
            Ok(())
        },
    ));
    let zpoly = || prop::collection::vec(multipoly_in(PARAMS, 2, 3), 1..=4);
    out.push(run(
        "quotient reduction is a homomorphism",
        HOMOMORPHISM_CASES,
        seed,
        (zpoly(), zpoly()),
        |(a, b)| {
            let r = chi_ring();
            let base = PolyRing::new();
            let mut prod = vec![MultiPoly::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
                }
            }
            let mut sum = vec![MultiPoly::zero(); a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                sum[i] = &sum[i] + x;
            }
            for (j, y) in b.iter().enumerate() {
                sum[j] = &sum[j] + y;
            }
            prop_assert_eq!(r.reduce(&prod), r.mul(&r.reduce(&a), &r.reduce(&b)));
            prop_assert_eq!(r.reduce(&sum), r.add(&r.reduce(&a), &r.reduce(&b)));
            Ok(())
        },
    ));
    let nonzero = rational().prop_filter("nonzero", |q| !q.is_zero());
    out.push(run(
        "action matrix stable under truncation",
        TRUNCATION_CASES,
        seed,
        (rational(), rational(), rational(), nonzero, 0usize..6),
        |(a0, a1, a2, a3, extra)| {
            let spec = FamilySpec::specialized(Family::Cubic, &[a0, a1, a2, a3], 1);
            let l4 = rational_l4(&spec).unwrap();
            let Some(found) = find_with_schedule(&l4, 1).unwrap() else {
                return Err(TestCaseError::fail("no order-6 partner"));
            };
            let m = found.operator;
            let n = m.order().unwrap() + 4 + extra;
            let a = action_matrix(&m, &series_kernel_basis(&l4, n).unwrap()).unwrap();
            let b = action_matrix(&m, &series_kernel_basis(&l4, n + 8).unwrap()).unwrap();
            prop_assert_eq!(a, b);
            Ok(())
        },
    ));
    out
}
