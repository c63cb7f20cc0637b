//! Double-double scalars.
//!
//! Arithmetic comes from `twofloat`; `exp` and `ln` are computed here to the
//! full ~32 significant digits because fourth differences on a fine grid
//! amplify any pointwise error by `h^-4`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use twofloat::TwoFloat;

use commuting_core::Rational;

pub type Dd = TwoFloat;
pub type Cdd = Complex<Dd>;

pub fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

pub fn cdd(re: f64, im: f64) -> Cdd {
    Complex::new(dd(re), dd(im))
}

pub fn to_f64(x: Dd) -> f64 {
    x.hi() + x.lo()
}

pub fn to_c64(z: Cdd) -> Complex<f64> {
    Complex::new(to_f64(z.re), to_f64(z.im))
}

pub fn c64_to_cdd(z: Complex<f64>) -> Cdd {
    cdd(z.re, z.im)
}

/// Magnitude to double precision, enough for norms and tolerances.
pub fn cabs(z: Cdd) -> f64 {
    z.re.hi().hypot(z.im.hi())
}

fn bigint_to_dd(n: &BigInt) -> Dd {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return dd(hi);
    }
    let rest = n - BigInt::from_f64(hi).unwrap_or_else(BigInt::zero);
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// Quotient to full double-double precision (`twofloat`'s own `Dd / Dd` is
/// only accurate to double precision).
pub fn div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

/// Nearest double-double to a rational.
pub fn from_rational(r: &Rational) -> Dd {
    div(bigint_to_dd(r.numer()), bigint_to_dd(r.denom()))
}

/// `p / q` as a double-double, for small integer literals.
pub fn ratio(p: i64, q: i64) -> Dd {
    div(dd(p as f64), dd(q as f64))
}

const EXP_HALVINGS: i32 = 4;
const EXP_TERMS: usize = 16;

pub fn exp(x: Dd) -> Dd {
    if x.hi() > 700.0 {
        return dd(f64::INFINITY);
    }
    if x.hi() < -700.0 {
        return dd(0.0);
    }
    let k = (x.hi() / std::f64::consts::LN_2).round();
    let r = (x - twofloat::consts::LN_2 * k) * 2f64.powi(-EXP_HALVINGS);
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    for n in 1..=EXP_TERMS {
        term = term * r / n as f64;
        sum += term;
    }
    for _ in 0..EXP_HALVINGS {
        sum = sum * sum;
    }
    sum * dd(2f64.powi(k as i32))
}

pub fn ln(a: Dd) -> Dd {
    let mut x = dd(a.hi().ln());
    for _ in 0..3 {
        x = x + a * exp(-x) - dd(1.0);
    }
    x
}

/// `z^n` for a non-negative exponent.
pub fn cpow(z: Cdd, n: u32) -> Cdd {
    let mut acc = Complex::new(dd(1.0), dd(0.0));
    for _ in 0..n {
        acc *= z;
    }
    acc
}
