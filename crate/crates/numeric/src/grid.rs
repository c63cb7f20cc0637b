use std::collections::BTreeMap;

use num_complex::Complex64;

use commuting_core::Family;

use crate::dd::{to_c64, to_f64, Cdd, Dd};

#[derive(Debug, Clone, PartialEq)]
pub struct GridMeta {
    pub family: Family,
    pub g: u32,
    pub eps: u8,
    pub params: BTreeMap<String, String>,
    /// Whether the kernel is that of the shifted second-order operator.
    pub shifted: bool,
    pub z: Option<Complex64>,
}

/// Samples on `x_k = x_0 + k h`, carried in double-double precision.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub x: Vec<Dd>,
    pub h: Dd,
    pub phi: Vec<Dd>,
    pub dphi: Vec<Dd>,
    pub psi: Option<Vec<Cdd>>,
    /// Pointwise `|L4 psi - z psi| / max|psi|`, absent near the boundary.
    pub residual: Option<Vec<Option<f64>>>,
    pub meta: GridMeta,
    /// Integration stopped early; the grid covers only part of the interval.
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub x: f64,
    pub phi: Complex64,
    pub psi: Option<Complex64>,
    pub residual: Option<f64>,
}

impl GridFunction {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn step(&self) -> f64 {
        to_f64(self.h)
    }

    pub fn rows(&self) -> impl Iterator<Item = GridRow> + '_ {
        (0..self.len()).map(move |k| GridRow {
            x: to_f64(self.x[k]),
            phi: Complex64::new(to_f64(self.phi[k]), 0.0),
            psi: self.psi.as_ref().map(|p| to_c64(p[k])),
            residual: self.residual.as_ref().and_then(|r| r[k]),
        })
    }
}
