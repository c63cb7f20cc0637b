use commuting_core::centralizer::find_with_schedule;
use commuting_core::families::{rational_l4, Family, FamilySpec};
use commuting_core::random::{random_squarefree_spec, rng_from_seed};
use commuting_core::rings::rat;
use commuting_core::verify::{corollary_branches, verify_corollary1, CorollaryTarget};
use commuting_core::Error;

#[test]
fn dixmier_g2_both_targets() {
    let spec = FamilySpec::specialized(Family::Cubic, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)], 2);
    let l4 = verify_corollary1(&spec, CorollaryTarget::L4, None).unwrap();
    assert!(l4.remainder_is_zero);
    let l10 = verify_corollary1(&spec, CorollaryTarget::L4g2, None).unwrap();
    assert!(l10.remainder_is_zero, "{:?}", l10.remainder);
    assert!(l10.witness_order.is_some());
}

#[test]
fn seeded_cubic_g2_with_partner() {
    let mut rng = rng_from_seed(2);
    for _ in 0..10 {
        let (spec, _) = random_squarefree_spec(&mut rng, Family::Cubic, 2).unwrap();
        let l4 = rational_l4(&spec).unwrap();
        let partner = find_with_schedule(&l4, 2).unwrap().expect("order-10 partner").operator;
        for (target, m) in [(CorollaryTarget::L4, None), (CorollaryTarget::L4g2, Some(&partner))] {
            let branches = corollary_branches(&spec, target, m).unwrap();
            assert!(!branches.is_empty());
            for b in branches {
                assert!(b.remainder_is_zero, "{spec:?} {target:?} at {}: {:?}", b.eigenvalue, b.remainder);
            }
        }
    }
}

#[test]
fn seeded_cubic_g4() {
    let mut rng = rng_from_seed(4);
    for _ in 0..10 {
        let (spec, _) = random_squarefree_spec(&mut rng, Family::Cubic, 4).unwrap();
        let report = verify_corollary1(&spec, CorollaryTarget::L4, None).unwrap();
        assert!(report.remainder_is_zero, "{spec:?}: {:?}", report.remainder);
    }
}

#[test]
fn quartic_family_also_commutes_mod_l2() {
    let mut rng = rng_from_seed(5);
    for g in [1, 2] {
        let (spec, _) = random_squarefree_spec(&mut rng, Family::Quartic, g).unwrap();
        assert!(verify_corollary1(&spec, CorollaryTarget::L4, None).unwrap().remainder_is_zero);
    }
}

#[test]
fn all_branches_degenerate() {
    // a2 = a3 = 0: chi = z^2 and p = z vanishes at the only eigenvalue
    let spec = FamilySpec::specialized(Family::Cubic, &[rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)], 2);
    assert_eq!(
        verify_corollary1(&spec, CorollaryTarget::L4, None).unwrap_err(),
        Error::DegenerateMultiplier
    );
}
