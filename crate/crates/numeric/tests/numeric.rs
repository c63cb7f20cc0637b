use commuting_core::families::char_poly_z;
use commuting_core::rings::{rat, rational_roots};
use commuting_core::{CharPoly, Family, FamilySpec, MultiPoly, Rational};
use commuting_numeric::bessel::{bessel_change_check, bessel_convergence, BesselConfig};
use commuting_numeric::dd::to_f64;
use commuting_numeric::roots::{numeric_roots, relative_residual};
use commuting_numeric::{eigen_residual, integrate_kernel, KernelConfig};
use num_complex::Complex64;
use num_traits::ToPrimitive;

fn q(n: i64) -> Rational {
    rat(n, 1)
}

fn spec(family: Family, values: &[i64], g: u32) -> FamilySpec {
    let v: Vec<Rational> = values.iter().map(|&n| q(n)).collect();
    FamilySpec::specialized(family, &v, g)
}

fn unit(init: (f64, f64), b: f64, step: f64, tol: f64) -> KernelConfig {
    KernelConfig {
        init,
        interval: (0.0, b),
        step,
        tol,
    }
}

#[test]
fn zero_potential_gives_a_line() {
    let s = spec(Family::Cubic, &[0, 0, 0, 0], 2);
    let grid = integrate_kernel(&s, false, &unit((0.0, 1.0), 1.0, 1e-2, 1e-10)).unwrap();
    for (x, phi) in grid.x.iter().zip(&grid.phi) {
        assert!(to_f64((*x - *phi).abs()) < 1e-12);
    }
}

#[test]
fn unit_potential_gives_sine() {
    let s = spec(Family::Cubic, &[1, 0, 0, 0], 2);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let cfg = KernelConfig {
        init: (0.0, 1.0),
        interval: (0.0, half_pi),
        step: half_pi / 100.0,
        tol: 1e-10,
    };
    let grid = integrate_kernel(&s, false, &cfg).unwrap();
    assert!((to_f64(*grid.phi.last().unwrap()) - 1.0).abs() < 1e-9);
}

/// `phi'' = -x^3 phi`, `phi(0) = 1`, `phi'(0) = 0`, summed from the
/// coefficient recurrence `(n+2)(n+1) c_{n+2} = -c_{n-3}`.
fn taylor_oracle(x: f64, terms: usize) -> f64 {
    let mut c = vec![Rational::from_integer(0.into()); terms];
    c[0] = q(1);
    for n in 0..terms - 2 {
        if n >= 3 {
            c[n + 2] = -c[n - 3].clone() / q(((n + 2) * (n + 1)) as i64);
        }
    }
    c.iter().rev().fold(0.0, |acc, cn| acc * x + cn.to_f64().unwrap())
}

#[test]
fn cubic_potential_matches_taylor_oracle() {
    let s = spec(Family::Cubic, &[0, 0, 0, 1], 2);
    let grid = integrate_kernel(&s, false, &unit((1.0, 0.0), 1.0, 1e-2, 1e-10)).unwrap();
    let phi1 = to_f64(*grid.phi.last().unwrap());
    assert!((phi1 - taylor_oracle(1.0, 60)).abs() < 1e-9, "{phi1}");
}

#[test]
fn dixmier_residual_at_zero() {
    let s = spec(Family::Cubic, &[0, 0, 0, 1], 2);
    let grid = integrate_kernel(&s, false, &KernelConfig::default_for(Family::Cubic)).unwrap();
    assert_eq!(grid.len(), 1001);
    let out = eigen_residual(&s, Complex64::new(0.0, 0.0), &grid).unwrap();
    assert!(out.max_relative < 1e-6, "{}", out.max_relative);
    // psi = 6 x phi at z = 0
    let psi = out.grid.psi.as_ref().unwrap();
    let k = 500;
    let expect = 6.0 * to_f64(grid.x[k]) * to_f64(grid.phi[k]);
    assert!((to_f64(psi[k].re) - expect).abs() < 1e-14);
    assert_eq!(out.grid.rows().filter(|r| r.residual.is_some()).count(), 1001 - 16);
}

#[test]
fn complex_roots_residual() {
    let s = spec(Family::Cubic, &[0, 1, 0, 1], 2);
    let chi = char_poly_z(&s).unwrap();
    let roots = numeric_roots(&chi).unwrap();
    assert_eq!(roots.len(), 2);
    let expect = 2.0 * 3f64.sqrt();
    assert!((roots[0] - Complex64::new(0.0, -expect)).norm() < 1e-12);
    assert!((roots[1] - Complex64::new(0.0, expect)).norm() < 1e-12);
    let grid = integrate_kernel(&s, false, &KernelConfig::default_for(Family::Cubic)).unwrap();
    for z in roots {
        let out = eigen_residual(&s, z, &grid).unwrap();
        assert!(out.max_relative < 1e-6, "{z}: {}", out.max_relative);
    }
}

#[test]
fn wrong_eigenvalue_is_detected() {
    let s = spec(Family::Cubic, &[0, 0, 0, 1], 2);
    let grid = integrate_kernel(&s, false, &KernelConfig::default_for(Family::Cubic)).unwrap();
    let out = eigen_residual(&s, Complex64::new(1.0, 0.0), &grid).unwrap();
    assert!(out.max_relative > 1e-3);
}

#[test]
fn exponential_residual() {
    let s = spec(Family::Exponential, &[0, 1], 1);
    let chi = char_poly_z(&s).unwrap();
    assert_eq!(chi.rational_coeffs().unwrap()[0], rat(1, 4));
    let grid = integrate_kernel(&s, true, &KernelConfig::default_for(Family::Exponential)).unwrap();
    let out = eigen_residual(&s, Complex64::new(-0.25, 0.0), &grid).unwrap();
    assert!(out.max_relative < 1e-6, "{}", out.max_relative);
    let unshifted = integrate_kernel(&s, false, &KernelConfig::default_for(Family::Exponential)).unwrap();
    assert!(eigen_residual(&s, Complex64::new(-0.25, 0.0), &unshifted).is_err());
}

#[test]
fn other_theorem_instances_are_consistent() {
    let cases = [
        spec(Family::Cubic, &[1, -2, 3, 2], 4),
        spec(Family::Quartic, &[1, 1, 2, 2, 1], 1),
        spec(Family::Quartic, &[0, 1, 2, 2, 1], 2),
        spec(Family::Exponential, &[-1, 2], 3).with_eps(1),
    ];
    for s in cases {
        let chi = char_poly_z(&s).unwrap();
        let grid = integrate_kernel(&s, true, &KernelConfig::default_for(s.family)).unwrap();
        for z in numeric_roots(&chi).unwrap() {
            let out = eigen_residual(&s, z, &grid).unwrap();
            assert!(out.max_relative < 1e-6, "{s:?} at {z}: {}", out.max_relative);
        }
    }
}

#[test]
fn residual_converges_at_stencil_order() {
    // coarse grids, where discretization dominates the integrator error
    let s = spec(Family::Exponential, &[0, 1], 1);
    let mut prev: Option<f64> = None;
    for step in [0.1, 0.05] {
        let cfg = KernelConfig {
            init: (1.0, 0.0),
            interval: (0.0, 2.0),
            step,
            tol: 1e-20,
        };
        let grid = integrate_kernel(&s, true, &cfg).unwrap();
        let r = eigen_residual(&s, Complex64::new(-0.25, 0.0), &grid).unwrap().max_relative;
        if let Some(p) = prev {
            let order = (p / r).log2();
            assert!(order >= 4.0, "observed order {order}");
        }
        prev = Some(r);
    }
}

#[test]
fn bessel_form_residual() {
    let out = bessel_change_check(&BesselConfig::new(0.0, 1.0, (1.0, 5.0))).unwrap();
    assert!(out.max_residual < 1e-5, "{}", out.max_residual);
    assert_eq!(out.y.len(), 401);
}

#[test]
fn bessel_grid_refinement_order() {
    let conv = bessel_convergence(&BesselConfig::new(0.0, 1.0, (1.0, 5.0)), 0.2, 3).unwrap();
    let order = conv.min_order_above(1e-13).expect("refinements above the floor");
    assert!(order >= 4.0, "{conv:?}");
}

#[test]
fn spec_root_examples() {
    let poly = |c: &[i64]| CharPoly {
        coeffs: c.iter().map(|&n| MultiPoly::int(n)).collect(),
    };
    let r = numeric_roots(&poly(&[0, 4, 1])).unwrap();
    assert!((r[0] + 4.0).norm() < 1e-14 && r[1].norm() < 1e-14);
    let r = numeric_roots(&poly(&[0, 0, 0, 1])).unwrap();
    assert_eq!(r, vec![Complex64::new(0.0, 0.0); 3]);
    let chi = poly(&[12, 0, 1]);
    for z in numeric_roots(&chi).unwrap() {
        assert!((z.im.abs() - 3.4641016151377544).abs() < 1e-12);
        assert!(relative_residual(&chi, z).unwrap() < 1e-12);
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn expand(roots: &[Rational]) -> Vec<Rational> {
        let mut p = vec![q(1)];
        for r in roots {
            let mut next = vec![q(0); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c.clone();
                next[i] -= c.clone() * r;
            }
            p = next;
        }
        p
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn numeric_roots_agree_with_rational_roots(
            roots in prop::collection::vec(small_rational(), 1..=3),
            extra in prop::option::of((1i64..=9, 1i64..=9)),
        ) {
            // optionally replace all but one root by an irreducible quadratic
            let base = if extra.is_some() { &roots[..1] } else { &roots[..] };
            let mut coeffs_full = expand(base);
            if let Some((b, c)) = extra {
                let quad = [q(b * b + c), q(0), q(1)];
                let mut prod = vec![q(0); coeffs_full.len() + 2];
                for (i, a) in coeffs_full.iter().enumerate() {
                    for (j, bq) in quad.iter().enumerate() {
                        prod[i + j] += a.clone() * bq;
                    }
                }
                coeffs_full = prod;
            }
            let chi = CharPoly { coeffs: coeffs_full.iter().cloned().map(MultiPoly::constant).collect() };
            let numeric = numeric_roots(&chi).unwrap();
            prop_assert_eq!(numeric.len(), coeffs_full.len() - 1);
            for r in rational_roots(&coeffs_full).unwrap() {
                let rf = r.to_f64().unwrap();
                prop_assert!(numeric.iter().any(|z| (z - Complex64::new(rf, 0.0)).norm() < 1e-10), "{} not in {:?}", r, numeric);
            }
            for z in &numeric {
                prop_assert!(relative_residual(&chi, *z).unwrap() < 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn numeric_path_never_contradicts_the_exact_identity(
            a in prop::collection::vec(-3i64..=3, 4),
            a3 in prop_oneof![-3i64..=-1, 1i64..=3],
        ) {
            let s = spec(Family::Cubic, &[a[0], a[1], a[2], a3], 2);
            let chi = char_poly_z(&s).unwrap();
            let grid = integrate_kernel(&s, false, &KernelConfig::default_for(Family::Cubic)).unwrap();
            for z in numeric_roots(&chi).unwrap() {
                let out = eigen_residual(&s, z, &grid).unwrap();
                prop_assert!(out.max_relative < 1e-6, "{:?} at {}: {}", s, z, out.max_relative);
            }
        }
    }
}
