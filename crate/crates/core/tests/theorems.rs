use commuting_core::families::{char_poly_z, Family, FamilySpec};
use commuting_core::random::{random_spec, rng_from_seed};
use commuting_core::rings::{reduce_mod_char, rat, LaurentRing, MultiPoly, PolyRing, Rational, Var};
use commuting_core::verify::{eigen_division, verify_eigen_identity, EigenDivision, Mode};
use commuting_core::{DiffOp, Error};

fn q(n: i64) -> Rational {
    rat(n, 1)
}

fn values(spec: &FamilySpec) -> Vec<(Var, Rational)> {
    (0..5)
        .filter_map(|i| spec.alpha[i].clone().map(|v| (Var::alpha(i), v)))
        .collect()
}

/// Specializes a symbolic quotient and reduces it modulo the specialized
/// eigenvalue polynomial.
fn specialize_poly_op(op: &DiffOp<PolyRing>, spec: &FamilySpec) -> DiffOp<PolyRing> {
    let chi = char_poly_z(spec).unwrap();
    let vals = values(spec);
    let coeffs = op
        .coeffs()
        .iter()
        .map(|c| {
            let s = c.specialize(&vals).unwrap();
            if chi.degree() == 1 {
                s.substitute(Var::Z, &MultiPoly::constant(-chi.rational_coeffs().unwrap()[0].clone()))
                    .unwrap()
            } else {
                reduce_mod_char(&s, &chi.to_multipoly()).unwrap()
            }
        })
        .collect();
    DiffOp::new(PolyRing::new(), coeffs)
}

fn specialize_laurent_op(op: &DiffOp<LaurentRing<PolyRing>>, spec: &FamilySpec) -> DiffOp<LaurentRing<PolyRing>> {
    let vals = values(spec);
    let coeffs = op
        .coeffs()
        .iter()
        .map(|c| {
            c.iter()
                .map(|(k, v)| (*k, v.specialize(&vals).unwrap()))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    DiffOp::new(op.ring().clone(), coeffs)
}

fn assert_agrees(symbolic: &EigenDivision, spec: &FamilySpec) {
    let specialized = eigen_division(spec).unwrap();
    assert!(specialized.remainder_is_zero(), "{spec:?}");
    match (symbolic, &specialized) {
        (EigenDivision::Polynomial { quotient: qs, .. }, EigenDivision::Polynomial { quotient: qp, .. }) => {
            assert_eq!(&specialize_poly_op(qs, spec), qp, "{spec:?}");
        }
        (EigenDivision::Exponential { quotient: qs, .. }, EigenDivision::Exponential { quotient: qp, .. }) => {
            assert_eq!(&specialize_laurent_op(qs, spec), qp, "{spec:?}");
        }
        _ => panic!("family mismatch"),
    }
}

#[test]
fn cubic_g2_symbolic() {
    let report = verify_eigen_identity(&FamilySpec::symbolic(Family::Cubic, 2)).unwrap();
    assert!(report.remainder_is_zero);
    assert_eq!(report.mode, Mode::Symbolic);
}

#[test]
fn cubic_g4_symbolic() {
    let report = verify_eigen_identity(&FamilySpec::symbolic(Family::Cubic, 4)).unwrap();
    assert!(report.remainder_is_zero, "{:?}", report.remainder);
    assert_eq!(report.witness_order, Some(2));
}

#[test]
fn quartic_symbolic_with_a1_eliminated() {
    for g in [1, 2] {
        let spec = FamilySpec::symbolic(Family::Quartic, g);
        let report = verify_eigen_identity(&spec).unwrap();
        assert!(report.remainder_is_zero, "g={g}: {:?}", report.remainder);
        assert_eq!(report.params["a1"], "eliminated");
    }
}

#[test]
fn exponential_all_shifts() {
    for g in 1..=6 {
        for eps in [0, 1] {
            let spec = FamilySpec::symbolic(Family::Exponential, g).with_eps(eps);
            let report = verify_eigen_identity(&spec).unwrap();
            assert!(report.remainder_is_zero, "g={g} eps={eps}");
        }
    }
}

#[test]
fn dixmier_nilpotent_eigenvalue_agrees_with_symbolic() {
    let symbolic = eigen_division(&FamilySpec::symbolic(Family::Cubic, 2)).unwrap();
    let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 2);
    assert_agrees(&symbolic, &spec);
}

#[test]
fn specialized_agrees_with_symbolic() {
    let cases = [
        (Family::Cubic, 2, 0),
        (Family::Cubic, 4, 0),
        (Family::Quartic, 1, 0),
        (Family::Quartic, 2, 0),
        (Family::Exponential, 1, 0),
        (Family::Exponential, 3, 1),
    ];
    for (n, (family, g, eps)) in cases.into_iter().enumerate() {
        let symbolic = eigen_division(&FamilySpec::symbolic(family, g).with_eps(eps)).unwrap();
        assert!(symbolic.remainder_is_zero());
        let mut rng = rng_from_seed(100 + n as u64);
        for _ in 0..25 {
            let spec = random_spec(&mut rng, family, g).with_eps(eps);
            assert_agrees(&symbolic, &spec);
        }
    }
}

#[test]
fn uncovered_pairs_are_reported() {
    for (family, g) in [(Family::Cubic, 1), (Family::Cubic, 3), (Family::Cubic, 7), (Family::Quartic, 5)] {
        let err = verify_eigen_identity(&FamilySpec::symbolic(family, g)).unwrap_err();
        assert!(matches!(err, Error::NotCovered { .. }), "{err:?}");
    }
}

#[test]
fn quartic_constraint_violation_is_an_error() {
    let spec = FamilySpec::specialized(Family::Quartic, &[q(0), q(1), q(1), q(1), q(1)], 1);
    assert_eq!(verify_eigen_identity(&spec).unwrap_err(), Error::QuarticConstraint);
}

#[test]
fn char_poly_modulus_reduces_to_zero() {
    for (family, g) in [(Family::Cubic, 2), (Family::Cubic, 4), (Family::Quartic, 2)] {
        let chi = char_poly_z(&FamilySpec::symbolic(family, g)).unwrap().to_multipoly();
        assert!(reduce_mod_char(&chi, &chi).unwrap().is_zero());
    }
    let spec = FamilySpec::specialized(Family::Cubic, &[q(0), q(0), q(0), q(1)], 4);
    let chi = char_poly_z(&spec).unwrap().to_multipoly();
    assert_eq!(chi, MultiPoly::var(Var::Z).pow(3));
    assert!(reduce_mod_char(&MultiPoly::var(Var::Z).pow(3), &chi).unwrap().is_zero());
}
