//! Rational roots of low-degree rational polynomials by the rational-root test.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Rational roots of `p` (ascending coefficients), with multiplicity, sorted.
pub fn rational_roots(p: &[Rational]) -> Result<Vec<Rational>> {
    let split = split_rational_roots(p)?;
    let mut out = Vec::new();
    for (r, m) in split.roots {
        out.extend(std::iter::repeat_n(r, m));
    }
    Ok(out)
}

/// Distinct rational roots with multiplicities, and the monic cofactor
/// without rational roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSplit {
    pub roots: Vec<(Rational, usize)>,
    pub cofactor: Vec<Rational>,
}

pub fn split_rational_roots(p: &[Rational]) -> Result<RootSplit> {
    let mut poly = trim(p.to_vec());
    let deg = poly.len().saturating_sub(1);
    if deg > 3 {
        return Err(Error::UnsupportedDegree(deg));
    }
    if poly.is_empty() {
        return Err(Error::Parse("zero polynomial has no finite root set".into()));
    }
    let mut found: Vec<Rational> = Vec::new();
    while poly.len() > 1 {
        match find_one_root(&poly) {
            Some(r) => {
                poly = deflate(&poly, &r);
                found.push(r);
            }
            None => break,
        }
    }
    found.sort();
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    for r in found {
        match roots.last_mut() {
            Some((last, m)) if *last == r => *m += 1,
            _ => roots.push((r, 1)),
        }
    }
    let lead = poly.last().expect("nonzero").clone();
    let cofactor = poly.iter().map(|c| c / &lead).collect();
    Ok(RootSplit { roots, cofactor })
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(z - r)`; `r` must be a root.
fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &carry * r;
        q[k] = carry.clone();
    }
    q
}

fn find_one_root(p: &[Rational]) -> Option<Rational> {
    if p[0].is_zero() {
        return Some(Rational::zero());
    }
    let ints = clear_denominators(p);
    let a0 = ints[0].abs();
    let an = ints.last().expect("nonempty").abs();
    let num_divs = divisors(&a0);
    let den_divs = divisors(&an);
    for d in &den_divs {
        for n in &num_divs {
            for sign in [1, -1] {
                let cand = Rational::new(n * BigInt::from(sign), d.clone());
                if eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn clear_denominators(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    debug_assert!(n.sign() == Sign::Plus);
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        let mut e = 0;
        while (&rest % &f).is_zero() {
            rest /= &f;
            e += 1;
        }
        if e > 0 {
            primes.push((f.clone(), e));
        }
        f += if f == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    #[test]
    fn quadratic_with_two_roots() {
        // z^2 + 4z
        assert_eq!(rational_roots(&q(&[0, 4, 1])).unwrap(), vec![rat(-4, 1), rat(0, 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        let split = split_rational_roots(&q(&[12, 0, 1])).unwrap();
        assert!(split.roots.is_empty());
        assert_eq!(split.cofactor, q(&[12, 0, 1]));
    }

    #[test]
    fn triple_root() {
        assert_eq!(rational_roots(&q(&[0, 0, 0, 1])).unwrap(), vec![rat(0, 1); 3]);
    }

    #[test]
    fn fractional_roots() {
        // (2z - 1)(3z + 2)(z - 5) = 6z^3 - 29z^2 - 7z + 10
        let roots = rational_roots(&q(&[10, -7, -29, 6])).unwrap();
        assert_eq!(roots, vec![rat(-2, 3), rat(1, 2), rat(5, 1)]);
    }

    #[test]
    fn mixed_split() {
        // (z - 1/2)(z^2 + 2) = z^3 - z^2/2 + 2z - 1
        let p = vec![rat(-1, 1), rat(2, 1), rat(-1, 2), rat(1, 1)];
        let split = split_rational_roots(&p).unwrap();
        assert_eq!(split.roots, vec![(rat(1, 2), 1)]);
        assert_eq!(split.cofactor, q(&[2, 0, 1]));
    }

    #[test]
    fn degree_cap() {
        assert_eq!(rational_roots(&q(&[1, 0, 0, 0, 1])).unwrap_err(), Error::UnsupportedDegree(4));
    }
}
