//! Central finite-difference weights on a uniform grid.

use num_complex::Complex;

use crate::dd::{div, ratio, Cdd, Dd};
use crate::{NumericError, Result};

#[derive(Debug, Clone)]
pub struct Stencil {
    /// Weights for offsets `-r..=r`, before division by `h^derivative`.
    pub weights: Vec<Dd>,
    pub derivative: u32,
    pub order: u32,
}

/// Weights at offsets `-r..=r` from the right-hand weights at `1..=r`.
fn symmetric(right: &[(i64, i64)], center: (i64, i64), odd: bool) -> Vec<Dd> {
    let sign = if odd { -1 } else { 1 };
    let mut w: Vec<Dd> = right.iter().rev().map(|&(p, q)| ratio(sign * p, q)).collect();
    w.push(ratio(center.0, center.1));
    w.extend(right.iter().map(|&(p, q)| ratio(p, q)));
    w
}

impl Stencil {
    pub fn second(order: u32) -> Result<Self> {
        let half: &[(i64, i64)] = match order {
            4 => &[(4, 3), (-1, 12)],
            6 => &[(3, 2), (-3, 20), (1, 90)],
            8 => &[(8, 5), (-1, 5), (8, 315), (-1, 560)],
            _ => return Err(NumericError::Input(format!("no second-derivative stencil of order {order}"))),
        };
        let center = match order {
            4 => (-5, 2),
            6 => (-49, 18),
            _ => (-205, 72),
        };
        Ok(Self {
            weights: symmetric(half, center, false),
            derivative: 2,
            order,
        })
    }

    pub fn first(order: u32) -> Result<Self> {
        let half: &[(i64, i64)] = match order {
            4 => &[(2, 3), (-1, 12)],
            6 => &[(3, 4), (-3, 20), (1, 60)],
            8 => &[(4, 5), (-1, 5), (4, 105), (-1, 280)],
            _ => return Err(NumericError::Input(format!("no first-derivative stencil of order {order}"))),
        };
        Ok(Self {
            weights: symmetric(half, (0, 1), true),
            derivative: 1,
            order,
        })
    }

    /// `h^-derivative`.
    pub fn inv_scale(&self, h: Dd) -> Dd {
        let mut scale = Dd::from(1.0);
        for _ in 0..self.derivative {
            scale *= h;
        }
        div(Dd::from(1.0), scale)
    }

    pub fn radius(&self) -> usize {
        self.weights.len() / 2
    }

    /// Derivative at index `k` of complex samples with spacing `h`.
    pub fn apply(&self, f: &[Cdd], k: usize, h: Dd) -> Cdd {
        let r = self.radius();
        let mut acc = Complex::new(Dd::from(0.0), Dd::from(0.0));
        for (j, w) in self.weights.iter().enumerate() {
            acc += f[k + j - r] * *w;
        }
        acc * self.inv_scale(h)
    }

    pub fn apply_real(&self, f: &[Dd], k: usize, h: Dd) -> Dd {
        let r = self.radius();
        let mut acc = Dd::from(0.0);
        for (j, w) in self.weights.iter().enumerate() {
            acc += f[k + j - r] * *w;
        }
        acc * self.inv_scale(h)
    }
}
