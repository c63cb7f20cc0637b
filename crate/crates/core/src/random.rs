//! Seeded random specializations of the family parameters.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{char_poly_z, solve_quartic_constraint, Family, FamilySpec};
use crate::rings::{DiffRing, Rational, Rationals, UniPolyRing};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Attempts allowed before giving up on a squarefree eigenvalue polynomial.
pub const RESAMPLE_BUDGET: usize = 50;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n / d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Rational::new(n.into(), d.into())
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let q = random_rational(rng, max_num, max_den);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Fully specialized parameters: the leading potential coefficient is
/// nonzero and, in the quartic family, `a1` solves the constraint.
pub fn random_spec<R: Rng>(rng: &mut R, family: Family, g: u32) -> FamilySpec {
    let mut values: Vec<Rational> = (0..family.param_count()).map(|_| random_rational(rng, 9, 4)).collect();
    let last = family.param_count() - 1;
    values[last] = random_nonzero_rational(rng, 9, 4);
    if family == Family::Quartic {
        values[1] = solve_quartic_constraint(&values[2], &values[3], &values[4]).expect("a4 is nonzero");
    }
    FamilySpec::specialized(family, &values, g)
}

/// Whether a rational polynomial (ascending coefficients) is squarefree.
pub fn is_squarefree(p: &[Rational]) -> bool {
    let ring = UniPolyRing::new(Rationals);
    let dp = ring.derive(&p.to_vec());
    match ring.gcd(p, &dp) {
        Some(g) => g.len() <= 1,
        None => false,
    }
}

/// Random specialization whose eigenvalue polynomial is squarefree,
/// resampling up to [`RESAMPLE_BUDGET`] times. Returns the spec and the number
/// of attempts used.
pub fn random_squarefree_spec<R: Rng>(rng: &mut R, family: Family, g: u32) -> Result<(FamilySpec, usize)> {
    for attempt in 1..=RESAMPLE_BUDGET {
        let spec = random_spec(rng, family, g);
        let chi = char_poly_z(&spec)?;
        let coeffs = chi.rational_coeffs().expect("specialized");
        if is_squarefree(&coeffs) {
            return Ok((spec, attempt));
        }
    }
    Err(Error::ResamplingExhausted(RESAMPLE_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::quartic_constraint;
    use crate::rings::rat;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_spec(&mut rng_from_seed(7), Family::Cubic, 2);
        let b = random_spec(&mut rng_from_seed(7), Family::Cubic, 2);
        assert_eq!(a, b);
        assert!(!a.is_symbolic());
    }

    #[test]
    fn quartic_samples_satisfy_constraint() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            let spec = random_spec(&mut rng, Family::Quartic, 2);
            spec.validate().unwrap();
            assert!(spec.substitute(&quartic_constraint()).unwrap().is_zero());
        }
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&[rat(12, 1), rat(0, 1), rat(1, 1)]));
        assert!(!is_squarefree(&[rat(0, 1), rat(0, 1), rat(1, 1)]));
        assert!(!is_squarefree(&[rat(1, 1), rat(2, 1), rat(1, 1)]));
        assert!(is_squarefree(&[rat(3, 1), rat(1, 1)]));
    }

    #[test]
    fn squarefree_sampling() {
        let mut rng = rng_from_seed(3);
        let (spec, attempts) = random_squarefree_spec(&mut rng, Family::Cubic, 4).unwrap();
        assert!(attempts <= RESAMPLE_BUDGET);
        let chi = char_poly_z(&spec).unwrap().rational_coeffs().unwrap();
        assert!(is_squarefree(&chi));
    }
}
