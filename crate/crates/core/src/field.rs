//! Pointwise functions on ℝⁿ and their symmetry.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{vector, Dimension};

/// Symmetry of a field about the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum Symmetry {
    /// Depends on `|x|` only.
    Radial,
    /// Depends on `|x|` and `x · axis` only; `axis` is a unit vector.
    Axisymmetric(Vec<f64>),
    General,
}

impl Symmetry {
    /// Axis to sample along; any unit vector works for radial fields.
    pub fn axis(&self, n: usize) -> Option<Vec<f64>> {
        match self {
            Symmetry::Radial => Some(vector::unit(n, 0)),
            Symmetry::Axisymmetric(a) => Some(a.clone()),
            Symmetry::General => None,
        }
    }
}

/// A function on (a subset of) ℝⁿ with an optional analytic gradient.
pub trait Field: Send + Sync {
    fn dim(&self) -> Dimension;

    fn value(&self, x: &[f64]) -> Result<f64>;

    /// Central differences unless overridden.
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let h = 1e-5 * vector::norm(x).max(1e-3);
        central_gradient(|y| self.value(y), x, h)
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::General
    }
}

impl<F: Field + ?Sized> Field for Arc<F> {
    fn dim(&self) -> Dimension {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> Result<f64> {
        (**self).value(x)
    }
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        (**self).gradient(x)
    }
    fn symmetry(&self) -> Symmetry {
        (**self).symmetry()
    }
}

impl<F: Field + ?Sized> Field for &F {
    fn dim(&self) -> Dimension {
        (**self).dim()
    }
    fn value(&self, x: &[f64]) -> Result<f64> {
        (**self).value(x)
    }
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        (**self).gradient(x)
    }
    fn symmetry(&self) -> Symmetry {
        (**self).symmetry()
    }
}

pub(crate) fn check_dim(n: Dimension, x: &[f64]) -> Result<()> {
    if x.len() != n.get() {
        return Err(Error::domain(format!("point has {} coordinates, field lives in dimension {n}", x.len())));
    }
    Ok(())
}

/// Second-order central-difference gradient.
pub fn central_gradient(mut f: impl FnMut(&[f64]) -> Result<f64>, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let mut y = x.to_vec();
    let mut g = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let fp = f(&y)?;
        y[i] = x[i] - h;
        let fm = f(&y)?;
        y[i] = x[i];
        g.push((fp - fm) / (2.0 * h));
    }
    Ok(g)
}

/// Three-point-per-axis central-difference Laplacian, `O(h²)`.
pub fn central_laplacian(f: &dyn Field, x: &[f64], h: f64) -> Result<f64> {
    let f0 = f.value(x)?;
    let mut y = x.to_vec();
    let mut lap = 0.0;
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let fp = f.value(&y)?;
        y[i] = x[i] - h;
        let fm = f.value(&y)?;
        y[i] = x[i];
        lap += fp - 2.0 * f0 + fm;
    }
    Ok(lap / (h * h))
}

/// Five-point-per-axis central-difference Laplacian, `O(h⁴)`.
pub fn central_laplacian4(f: &dyn Field, x: &[f64], h: f64) -> Result<f64> {
    let f0 = f.value(x)?;
    let mut y = x.to_vec();
    let mut lap = 0.0;
    for i in 0..x.len() {
        let mut at = |k: f64| {
            y[i] = x[i] + k * h;
            f.value(&y)
        };
        let (p1, m1, p2, m2) = (at(1.0)?, at(-1.0)?, at(2.0)?, at(-2.0)?);
        y[i] = x[i];
        lap += 16.0 * (p1 + m1) - (p2 + m2) - 30.0 * f0;
    }
    Ok(lap / (12.0 * h * h))
}

/// Finite-difference residual of `Δu + K u^{(n+2)/(n-2)}` at `x`.
///
/// Uses the fourth-order stencil: near the peak of a concentrated bubble the
/// second-order one is dominated by truncation error at `h = 1e-3`.
pub fn pde_residual(u: &dyn Field, k: f64, x: &[f64], h: f64) -> Result<f64> {
    let p = u.dim().critical_exponent();
    Ok(central_laplacian4(u, x, h)? + k * u.value(x)?.powf(p))
}

type ValueFn = dyn Fn(&[f64]) -> Result<f64> + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync;

/// A field built from closures.
#[derive(Clone)]
pub struct FnField {
    n: Dimension,
    value: Arc<ValueFn>,
    gradient: Option<Arc<GradFn>>,
    symmetry: Symmetry,
}

impl FnField {
    pub fn new(
        n: Dimension,
        symmetry: Symmetry,
        value: impl Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        FnField { n, value: Arc::new(value), gradient: None, symmetry }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    /// `u ≡ c`.
    pub fn constant(n: Dimension, c: f64) -> Self {
        FnField::new(n, Symmetry::Radial, move |_| Ok(c)).with_gradient(move |x| Ok(vec![0.0; x.len()]))
    }

    /// `u = |x|^k`, singular at the origin when `k < 0`.
    pub fn power(n: Dimension, k: f64) -> Self {
        FnField::new(n, Symmetry::Radial, move |x| {
            let r = vector::norm(x);
            if r == 0.0 {
                return Err(Error::domain("power field evaluated at the origin"));
            }
            Ok(r.powf(k))
        })
        .with_gradient(move |x| {
            let r = vector::norm(x);
            if r == 0.0 {
                return Err(Error::domain("power field evaluated at the origin"));
            }
            Ok(vector::scale(x, k * r.powf(k - 2.0)))
        })
    }
}

impl fmt::Debug for FnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnField")
            .field("n", &self.n)
            .field("symmetry", &self.symmetry)
            .field("analytic_gradient", &self.gradient.is_some())
            .finish()
    }
}

impl Field for FnField {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.n, x)?;
        (self.value)(x)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x)?;
        match &self.gradient {
            Some(g) => g(x),
            None => {
                let h = 1e-5 * vector::norm(x).max(1e-3);
                central_gradient(|y| (self.value)(y), x, h)
            }
        }
    }

    fn symmetry(&self) -> Symmetry {
        self.symmetry.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_field_gradient_matches_differences() {
        let n = Dimension::new(3).unwrap();
        let u = FnField::power(n, -1.5);
        let x = [0.4, -0.7, 1.1];
        let g = u.gradient(&x).unwrap();
        let fd = central_gradient(|y| u.value(y), &x, 1e-6).unwrap();
        for (a, b) in g.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn laplacian_of_fundamental_solution_vanishes() {
        let n = Dimension::new(4).unwrap();
        let u = FnField::power(n, -2.0);
        let lap = central_laplacian(&u, &[0.5, 0.2, -0.3, 0.9], 1e-3).unwrap();
        assert!(lap.abs() < 1e-4);
    }

    #[test]
    fn fourth_order_laplacian_is_exact_on_quintics() {
        let n = Dimension::new(3).unwrap();
        let u = FnField::new(n, Symmetry::General, |x: &[f64]| Ok(x[0].powi(5) + x[1].powi(4) * x[2]));
        let x = [0.7f64, -0.4, 1.3];
        let want = 20.0 * x[0].powi(3) + 12.0 * x[1].powi(2) * x[2];
        assert!((central_laplacian4(&u, &x, 1e-2).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let u = FnField::constant(Dimension::new(3).unwrap(), 1.0);
        assert!(u.value(&[1.0, 2.0]).is_err());
    }
}
