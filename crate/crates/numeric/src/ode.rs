//! Dormand–Prince 5(4) in double-double arithmetic.
//!
//! Steps are clipped so that every requested output point is a step
//! endpoint when `align_steps` is set; otherwise outputs are produced by the
//! method's fourth-order continuous extension.

use crate::dd::{dd, div, ratio, to_f64, Dd};

#[derive(Debug, Clone, Copy)]
pub struct OdeConfig {
    /// Mixed absolute/relative local error bound per step.
    pub tol: f64,
    pub align_steps: bool,
    pub max_steps: usize,
    /// Magnitude beyond which the solution is declared blown up.
    pub overflow: f64,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            align_steps: true,
            max_steps: 10_000_000,
            overflow: 1e150,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub t: Vec<Dd>,
    pub y: Vec<[Dd; N]>,
    pub accepted: usize,
    pub rejected: usize,
    /// Set when integration stopped before the last output point.
    pub diagnostic: Option<String>,
}

struct Tableau {
    c: [Dd; 7],
    a: [[Dd; 6]; 7],
    b: [Dd; 7],
    e: [Dd; 7],
    d: [Dd; 7],
}

fn tableau() -> Tableau {
    let z = dd(0.0);
    let b = [ratio(35, 384), z, ratio(500, 1113), ratio(125, 192), ratio(-2187, 6784), ratio(11, 84), z];
    let bs = [
        ratio(5179, 57600),
        z,
        ratio(7571, 16695),
        ratio(393, 640),
        ratio(-92097, 339200),
        ratio(187, 2100),
        ratio(1, 40),
    ];
    let mut e = [z; 7];
    for i in 0..7 {
        e[i] = b[i] - bs[i];
    }
    Tableau {
        c: [z, ratio(1, 5), ratio(3, 10), ratio(4, 5), ratio(8, 9), dd(1.0), dd(1.0)],
        a: [
            [z; 6],
            [ratio(1, 5), z, z, z, z, z],
            [ratio(3, 40), ratio(9, 40), z, z, z, z],
            [ratio(44, 45), ratio(-56, 15), ratio(32, 9), z, z, z],
            [ratio(19372, 6561), ratio(-25360, 2187), ratio(64448, 6561), ratio(-212, 729), z, z],
            [ratio(9017, 3168), ratio(-355, 33), ratio(46732, 5247), ratio(49, 176), ratio(-5103, 18656), z],
            [b[0], b[1], b[2], b[3], b[4], b[5]],
        ],
        b,
        e,
        d: [
            ratio(-12715105075, 11282082432),
            z,
            ratio(87487479700, 32700410799),
            ratio(-10690763975, 1880347072),
            ratio(701980252875, 199316789632),
            ratio(-1453857185, 822651844),
            ratio(69997945, 29380423),
        ],
    }
}

struct Step<const N: usize> {
    y_new: [Dd; N],
    k: [[Dd; N]; 7],
    err: f64,
}

fn attempt<const N: usize, F>(f: &F, tab: &Tableau, t: Dd, y: &[Dd; N], k1: &[Dd; N], h: Dd, tol: f64) -> Step<N>
where
    F: Fn(Dd, &[Dd; N]) -> [Dd; N],
{
    let mut k = [[dd(0.0); N]; 7];
    k[0] = *k1;
    for s in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            let a = tab.a[s][j];
            if a.hi() != 0.0 {
                for i in 0..N {
                    ys[i] += h * a * kj[i];
                }
            }
        }
        k[s] = f(t + h * tab.c[s], &ys);
    }
    let mut y_new = *y;
    let mut sq = 0.0;
    for i in 0..N {
        let mut incr = dd(0.0);
        let mut est = dd(0.0);
        for s in 0..7 {
            incr += tab.b[s] * k[s][i];
            est += tab.e[s] * k[s][i];
        }
        y_new[i] += h * incr;
        let scale = tol * (1.0 + to_f64(y[i].abs()).max(to_f64(y_new[i].abs())));
        let r = to_f64((h * est).abs()) / scale;
        sq += r * r;
    }
    Step {
        y_new,
        k,
        err: (sq / N as f64).sqrt(),
    }
}

fn dense<const N: usize>(tab: &Tableau, y: &[Dd; N], step: &Step<N>, h: Dd, theta: Dd) -> [Dd; N] {
    let one = dd(1.0);
    let theta1 = one - theta;
    let mut out = [dd(0.0); N];
    for i in 0..N {
        let diff = step.y_new[i] - y[i];
        let bspl = h * step.k[0][i] - diff;
        let r4 = diff - h * step.k[6][i] - bspl;
        let mut r5 = dd(0.0);
        for s in 0..7 {
            r5 += tab.d[s] * step.k[s][i];
        }
        r5 = h * r5;
        out[i] = y[i] + theta * (diff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
    }
    out
}

fn finite_and_bounded<const N: usize>(y: &[Dd; N], bound: f64) -> bool {
    y.iter().all(|v| v.hi().is_finite() && v.hi().abs() <= bound)
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` and reports the solution at the
/// increasing points `outputs` (all `>= t0`).
pub fn integrate<const N: usize, F>(f: F, t0: Dd, y0: [Dd; N], outputs: &[Dd], cfg: &OdeConfig) -> OdeSolution<N>
where
    F: Fn(Dd, &[Dd; N]) -> [Dd; N],
{
    let tab = tableau();
    let mut sol = OdeSolution {
        t: Vec::with_capacity(outputs.len()),
        y: Vec::with_capacity(outputs.len()),
        accepted: 0,
        rejected: 0,
        diagnostic: None,
    };
    let mut t = t0;
    let mut y = y0;
    let mut next = 0;
    while next < outputs.len() && outputs[next] <= t {
        sol.t.push(outputs[next]);
        sol.y.push(y);
        next += 1;
    }
    let Some(last) = outputs.last().copied() else {
        return sol;
    };
    if next == outputs.len() {
        return sol;
    }
    let span = to_f64(last - t0);
    let mut h = dd((span / 100.0).min(cfg.tol.powf(0.2)).max(span * 1e-12));
    let mut k1 = f(t, &y);
    let mut steps = 0;
    while next < outputs.len() {
        steps += 1;
        if steps > cfg.max_steps {
            sol.diagnostic = Some(format!("step budget exhausted at x = {:.6e}", to_f64(t)));
            break;
        }
        let target = outputs[next];
        let mut clipped = false;
        let mut hh = h;
        let remaining = last - t;
        if cfg.align_steps && t + hh >= target {
            hh = target - t;
            clipped = true;
        } else if hh > remaining {
            hh = remaining;
            clipped = true;
        }
        let step = attempt(&f, &tab, t, &y, &k1, hh, cfg.tol);
        let factor = if step.err == 0.0 { 5.0 } else { (0.9 * step.err.powf(-0.2)).clamp(0.2, 5.0) };
        if step.err > 1.0 || !step.err.is_finite() {
            sol.rejected += 1;
            h = hh * dd(factor.min(1.0));
            if to_f64(h.abs()) < span * 1e-18 {
                sol.diagnostic = Some(format!("step size underflow at x = {:.6e}", to_f64(t)));
                break;
            }
            continue;
        }
        sol.accepted += 1;
        let t_new = if clipped && cfg.align_steps { target } else if clipped { last } else { t + hh };
        if !cfg.align_steps {
            while next < outputs.len() && outputs[next] < t_new {
                let theta = div(outputs[next] - t, hh);
                sol.t.push(outputs[next]);
                sol.y.push(dense(&tab, &y, &step, hh, theta));
                next += 1;
            }
        }
        if !finite_and_bounded(&step.y_new, cfg.overflow) {
            sol.diagnostic = Some(format!("solution exceeded {:.1e} near x = {:.6e}", cfg.overflow, to_f64(t_new)));
            break;
        }
        t = t_new;
        y = step.y_new;
        k1 = step.k[6];
        while next < outputs.len() && outputs[next] <= t {
            sol.t.push(outputs[next]);
            sol.y.push(y);
            next += 1;
        }
        if !clipped {
            h = hh * dd(factor);
        } else {
            h = h.max(hh * dd(factor));
        }
    }
    sol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Vec<Dd> {
        let h = (dd(b) - dd(a)) / n as f64;
        (0..=n).map(|k| dd(a) + h * dd(k as f64)).collect()
    }

    #[test]
    fn exponential_growth_matches_exp() {
        let out = grid(0.0, 1.0, 10);
        for align in [true, false] {
            let cfg = OdeConfig {
                tol: 1e-14,
                align_steps: align,
                ..Default::default()
            };
            let sol = integrate(|_, y: &[Dd; 1]| [y[0]], dd(0.0), [dd(1.0)], &out, &cfg);
            assert_eq!(sol.t.len(), 11);
            let err = to_f64((sol.y[10][0] - crate::dd::exp(dd(1.0))).abs());
            assert!(err < 1e-12, "align={align} err={err}");
        }
    }

    #[test]
    fn dense_output_between_steps() {
        let out = grid(0.0, 2.0, 400);
        let cfg = OdeConfig {
            tol: 1e-12,
            align_steps: false,
            ..Default::default()
        };
        let sol = integrate(|_, y: &[Dd; 2]| [y[1], -y[0]], dd(0.0), [dd(0.0), dd(1.0)], &out, &cfg);
        assert!(sol.accepted < 400);
        for (t, y) in sol.t.iter().zip(&sol.y) {
            assert!((to_f64(y[0]) - to_f64(*t).sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let out = grid(0.0, 2.0, 20);
        let sol = integrate(|_, y: &[Dd; 1]| [y[0] * y[0]], dd(0.0), [dd(1.0)], &out, &OdeConfig::default());
        assert!(sol.diagnostic.is_some());
        assert!(sol.t.len() < 21 && sol.t.len() >= 10);
    }
}
