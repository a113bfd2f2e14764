use std::f64::consts::PI;

use super::Dimension;
use crate::error::{Error, Result};

/// `Γ(m/2)` for a positive integer `m`.
///
/// Only integer and half-integer arguments occur in sphere measures, so the
/// value is built exactly from `Γ(1/2) = √π`, `Γ(1) = 1` and `Γ(x+1) = xΓ(x)`.
pub fn gamma_half(m: u32) -> f64 {
    assert!(m >= 1, "gamma_half needs a positive argument");
    let (mut x, mut acc) = if m.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = m as f64 / 2.0;
    while x < target {
        acc *= x;
        x += 1.0;
    }
    acc
}

/// Surface measure `ω_k = 2π^{(k+1)/2} / Γ((k+1)/2)` of the unit `k`-sphere in ℝ^{k+1}.
///
/// `ω_1 = 2π`, `ω_2 = 4π`, `ω_3 = 2π²`.
pub fn sphere_area(k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain(format!("sphere dimension must be at least 1, got {k}")));
    }
    let h = (k + 1) as f64 / 2.0;
    Ok(2.0 * PI.powf(h) / gamma_half(k as u32 + 1))
}

/// The two sphere measures attached to a dimension `n`: `ω_n` (the unit
/// `n`-sphere in ℝ^{n+1}) and `ω_{n-1}` (the unit sphere of ℝⁿ).
///
/// `ω_k` always denotes the `k`-dimensional surface measure of the unit `k`-sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMeasure {
    pub n: Dimension,
    pub omega_n: f64,
    pub omega_n_minus_1: f64,
}

impl SphereMeasure {
    pub fn new(n: Dimension) -> Self {
        let k = n.get();
        SphereMeasure {
            n,
            omega_n: sphere_area(k).expect("k >= 3"),
            omega_n_minus_1: sphere_area(k - 1).expect("k >= 3"),
        }
    }
}
