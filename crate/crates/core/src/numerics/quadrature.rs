use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use super::{gamma_half, Dimension};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    GaussLegendre,
    /// Symmetric Jacobi weight `(1 - x²)^alpha` on `[-1, 1]`.
    GaussJacobi {
        alpha: f64,
    },
    TrapezoidPeriodic,
}

/// A fixed quadrature rule `∫ f ≈ Σ wᵢ f(xᵢ)` on a reference interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Number of nodes.
    pub order: usize,
    /// Reference interval `(lo, hi)`; nodes lie strictly inside.
    pub interval: (f64, f64),
}

impl QuadratureRule {
    /// `m`-point Gauss-Legendre rule on `[-1, 1]`, exact for degree `2m - 1`.
    pub fn gauss_legendre(m: usize) -> Result<Self> {
        let (nodes, weights) = symmetric_gauss_jacobi(0.0, m)?;
        Ok(QuadratureRule { kind: QuadratureKind::GaussLegendre, nodes, weights, order: m, interval: (-1.0, 1.0) })
    }

    /// `m`-point Gauss rule for the weight `(1 - x²)^alpha` on `[-1, 1]`.
    ///
    /// `2·alpha` must be a non-negative integer.
    pub fn gauss_jacobi(alpha: f64, m: usize) -> Result<Self> {
        let (nodes, weights) = symmetric_gauss_jacobi(alpha, m)?;
        Ok(QuadratureRule {
            kind: QuadratureKind::GaussJacobi { alpha },
            nodes,
            weights,
            order: m,
            interval: (-1.0, 1.0),
        })
    }

    /// Midpoint-shifted trapezoid rule on one period `[0, 2π)`.
    pub fn trapezoid_periodic(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain("trapezoid rule needs at least one node"));
        }
        let h = 2.0 * PI / m as f64;
        Ok(QuadratureRule {
            kind: QuadratureKind::TrapezoidPeriodic,
            nodes: (0..m).map(|k| (k as f64 + 0.5) * h).collect(),
            weights: vec![h; m],
            order: m,
            interval: (0.0, 2.0 * PI),
        })
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn try_integrate(&self, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(x)?;
        }
        Ok(acc)
    }

    /// Total weight, i.e. the measure of the reference interval under the rule's weight.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Affine image of a Gauss-Legendre rule on `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> Result<Self> {
        if self.kind != QuadratureKind::GaussLegendre {
            return Err(Error::domain("only Gauss-Legendre rules can be mapped affinely"));
        }
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        Ok(QuadratureRule {
            kind: self.kind,
            nodes: self.nodes.iter().map(|x| c + h * x).collect(),
            weights: self.weights.iter().map(|w| w * h).collect(),
            order: self.order,
            interval: (a, b),
        })
    }
}

/// Polar-angle rule on `(0, π)` for the weight `sin^{n-2} φ`.
///
/// An axisymmetric integral over the unit sphere of ℝⁿ reduces to
/// `ω_{n-2} ∫₀^π f(φ) sin^{n-2}φ dφ`; this is the Gauss-Jacobi rule with
/// `alpha = (n-3)/2` pulled back by `φ = arccos x`, so it is exact for
/// polynomials in `cos φ` of degree `2m - 1`. Nodes are increasing in `φ`.
pub fn polar_quadrature(n: Dimension, m: usize) -> Result<QuadratureRule> {
    if m < 2 {
        return Err(Error::domain(format!("polar quadrature needs m >= 2, got {m}")));
    }
    let alpha = (n.as_f64() - 3.0) / 2.0;
    let (x, w) = symmetric_gauss_jacobi(alpha, m)?;
    // x ascending ⇒ φ = arccos x descending; reverse both.
    let nodes: Vec<f64> = x.iter().rev().map(|c| c.acos()).collect();
    let weights: Vec<f64> = w.into_iter().rev().collect();
    Ok(QuadratureRule { kind: QuadratureKind::GaussJacobi { alpha }, nodes, weights, order: m, interval: (0.0, PI) })
}

/// `∫_{-1}^{1} (1 - x²)^alpha dx` for `2·alpha` a non-negative integer.
fn jacobi_mass(alpha: f64) -> f64 {
    let twice = (2.0 * alpha).round() as u32;
    // √π Γ(α+1) / Γ(α+3/2)
    PI.sqrt() * gamma_half(twice + 2) / gamma_half(twice + 3)
}

/// Off-diagonal of the orthonormal recurrence: `b_k² = k(k+2α) / ((2k+2α)² - 1)`.
fn recurrence_b(alpha: f64, k: usize) -> f64 {
    let k = k as f64;
    let d = 2.0 * k + 2.0 * alpha;
    (k * (k + 2.0 * alpha) / (d * d - 1.0)).sqrt()
}

/// Orthonormal polynomials `p̂_0..p̂_m` and `p̂_m'` at `x`.
fn orthonormal_at(alpha: f64, m: usize, mu0: f64, x: f64) -> (Vec<f64>, f64) {
    let mut p = Vec::with_capacity(m + 1);
    let mut dp = Vec::with_capacity(m + 1);
    p.push(1.0 / mu0.sqrt());
    dp.push(0.0);
    for k in 0..m {
        let b_next = recurrence_b(alpha, k + 1);
        let (pm1, dpm1, bk) = if k == 0 { (0.0, 0.0, 0.0) } else { (p[k - 1], dp[k - 1], recurrence_b(alpha, k)) };
        p.push((x * p[k] - bk * pm1) / b_next);
        dp.push((p[k] + x * dp[k] - bk * dpm1) / b_next);
    }
    let d = dp[m];
    (p, d)
}

fn symmetric_gauss_jacobi(alpha: f64, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m < 1 {
        return Err(Error::domain("a Gauss rule needs at least one node"));
    }
    let twice = 2.0 * alpha;
    if !(twice >= 0.0 && (twice - twice.round()).abs() < 1e-12) {
        return Err(Error::domain(format!("Jacobi exponent must be a non-negative half-integer, got {alpha}")));
    }
    let mu0 = jacobi_mass(alpha);
    if m == 1 {
        return Ok((vec![0.0], vec![mu0]));
    }

    // Golub-Welsch for starting values.
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let b = recurrence_b(alpha, k);
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let mut x: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    x.sort_by(f64::total_cmp);

    let mut w = Vec::with_capacity(m);
    for xi in x.iter_mut() {
        for _ in 0..3 {
            let (p, d) = orthonormal_at(alpha, m, mu0, *xi);
            if d == 0.0 {
                break;
            }
            let step = p[m] / d;
            *xi -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (p, _) = orthonormal_at(alpha, m, mu0, *xi);
        let s: f64 = p[..m].iter().map(|v| v * v).sum();
        w.push(1.0 / s);
    }
    // Symmetrise: the weight is even, so nodes come in ± pairs.
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let xs = 0.5 * (x[j] - x[i]);
        let ws = 0.5 * (w[i] + w[j]);
        x[i] = -xs;
        x[j] = xs;
        w[i] = ws;
        w[j] = ws;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    Ok((x, w))
}

/// Adaptive composite Gauss-Legendre integration of `f` over `[a, b]`.
///
/// Each panel is compared against its two halves; panels are bisected until
/// the summed discrepancy is below `tol·max(1, |I|)`. Returns the value and the
/// error estimate.
pub fn integrate_adaptive(mut f: impl FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    const NODES: usize = 10;
    const MAX_PANELS: usize = 20_000;
    if a == b {
        return Ok((0.0, 0.0));
    }
    let base = QuadratureRule::gauss_legendre(NODES)?;
    let mut panel = |lo: f64, hi: f64| -> Result<f64> {
        let (c, h) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        let mut s = 0.0;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            s += w * f(c + h * x)?;
        }
        Ok(s * h)
    };

    // Each panel holds the two-half (fine) estimate, the coarse-vs-fine
    // discrepancy as its error, and its halves so children reuse them as coarse values.
    struct Panel {
        lo: f64,
        hi: f64,
        halves: (f64, f64),
        err: f64,
    }
    fn make(panel: &mut impl FnMut(f64, f64) -> Result<f64>, lo: f64, hi: f64, coarse: f64) -> Result<Panel> {
        let mid = 0.5 * (lo + hi);
        let halves = (panel(lo, mid)?, panel(mid, hi)?);
        let err = (halves.0 + halves.1 - coarse).abs();
        Ok(Panel { lo, hi, halves, err })
    }

    let whole = panel(a, b)?;
    let mut panels = vec![make(&mut panel, a, b, whole)?];
    loop {
        let total: f64 = panels.iter().map(|p| p.halves.0 + p.halves.1).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let target = tol * total.abs().max(1.0);
        if err <= target {
            return Ok((total, err));
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Accuracy { what: "adaptive quadrature", achieved: err, requested: target });
        }
        let (idx, _) = panels.iter().enumerate().max_by(|a, b| a.1.err.total_cmp(&b.1.err)).expect("non-empty");
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.lo + p.hi);
        panels.push(make(&mut panel, p.lo, mid, p.halves.0)?);
        panels.push(make(&mut panel, mid, p.hi, p.halves.1)?);
    }
}
