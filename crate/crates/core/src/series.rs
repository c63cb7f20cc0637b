//! Truncated power series in `x` and the action of polynomial-coefficient
//! operators on them.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::rings::{MultiPoly, PolyRing, Rational, Var};

/// `sum_{k < N} c_k x^k + O(x^N)` with coefficients free of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<MultiPoly>,
}

impl PowerSeries {
    /// Series known modulo `x^truncation`; extra coefficients are dropped,
    /// missing ones are zero.
    pub fn new(mut coeffs: Vec<MultiPoly>, truncation: usize) -> Self {
        coeffs.resize(truncation, MultiPoly::zero());
        debug_assert!(coeffs.iter().all(|c| !c.involves(Var::X)));
        Self { coeffs }
    }

    /// Taylor series of a polynomial in `x`.
    pub fn from_polynomial(p: &MultiPoly, truncation: usize) -> Result<Self> {
        Ok(Self::new(p.coefficients_in(Var::X)?, truncation))
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `k`-th derivative at 0, i.e. `k! c_k`.
    pub fn taylor_datum(&self, k: usize) -> MultiPoly {
        self.coeffs[k].scale(&factorial(k))
    }

    /// `f^(i)`, known modulo `x^(N - i)`.
    pub fn derivative(&self, i: usize) -> Self {
        let n = self.truncation().saturating_sub(i);
        let coeffs = (0..n)
            .map(|k| self.coeffs[k + i].scale(&falling(k + i, i)))
            .collect();
        Self { coeffs }
    }

    pub fn restrict(&self, truncation: usize) -> Self {
        Self::new(self.coeffs[..truncation.min(self.truncation())].to_vec(), truncation.min(self.truncation()))
    }
}

/// `n (n-1) ... (n-i+1)`.
pub(crate) fn falling(n: usize, i: usize) -> Rational {
    let mut acc: i128 = 1;
    for t in 0..i {
        acc *= (n - t) as i128;
    }
    Rational::from_integer(acc.into())
}

pub(crate) fn factorial(n: usize) -> Rational {
    falling(n, n)
}

/// `L f` for an operator with coefficients polynomial in `x`. The result is
/// known modulo `x^(N - order(L))`.
pub fn apply_to_series(l: &DiffOp<PolyRing>, f: &PowerSeries) -> Result<PowerSeries> {
    let Some(order) = l.order() else {
        return Ok(PowerSeries::new(Vec::new(), f.truncation()));
    };
    if f.truncation() <= order {
        return Err(Error::InsufficientTruncation {
            needed: order + 1,
            have: f.truncation(),
        });
    }
    let out_n = f.truncation() - order;
    let mut out = vec![MultiPoly::zero(); out_n];
    for (i, a) in l.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let di = f.derivative(i);
        for (m, am) in a.coefficients_in(Var::X)?.iter().enumerate() {
            if am.is_zero() {
                continue;
            }
            for k in m..out_n {
                let c = di.coeff(k - m);
                if !c.is_zero() {
                    out[k] = &out[k] + &(am * c);
                }
            }
        }
    }
    Ok(PowerSeries { coeffs: out })
}
