use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{central_gradient, Field, Symmetry};
use crate::numerics::{vector, Dimension};
use crate::transforms::DeformedDelaunay;

/// Behaviour of `K` at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `K` is constant for `|x| ≥ radius`.
    ConstantOutside {
        radius: f64,
    },
    General,
}

type Eval = dyn Fn(&[f64]) -> Result<f64> + Send + Sync;
type Grad = dyn Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync;

/// A curvature function `K` with its gradient and support information.
#[derive(Clone)]
pub struct CurvatureFunction {
    n: Dimension,
    eval: Arc<Eval>,
    gradient: Option<Arc<Grad>>,
    tail: Tail,
    /// `∇K = 0` on `|x| < flat_below`.
    flat_below: Option<f64>,
    constant: Option<f64>,
    symmetry: Symmetry,
}

impl fmt::Debug for CurvatureFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurvatureFunction")
            .field("n", &self.n)
            .field("tail", &self.tail)
            .field("flat_below", &self.flat_below)
            .field("constant", &self.constant)
            .field("symmetry", &self.symmetry)
            .finish()
    }
}

impl CurvatureFunction {
    pub fn constant(n: Dimension, value: f64) -> Self {
        CurvatureFunction {
            n,
            eval: Arc::new(move |_| Ok(value)),
            gradient: Some(Arc::new(|x: &[f64]| Ok(vec![0.0; x.len()]))),
            tail: Tail::ConstantOutside { radius: 0.0 },
            flat_below: Some(f64::INFINITY),
            constant: Some(value),
            symmetry: Symmetry::Radial,
        }
    }

    /// `K ≡ n(n-2)`, the normalisation of the solution families.
    pub fn standard(n: Dimension) -> Self {
        Self::constant(n, n.sphere_curvature())
    }

    pub fn new(
        n: Dimension,
        symmetry: Symmetry,
        tail: Tail,
        eval: impl Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        CurvatureFunction { n, eval: Arc::new(eval), gradient: None, tail, flat_below: None, constant: None, symmetry }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&[f64]) -> Result<Vec<f64>> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    /// Declares `∇K = 0` on the ball of radius `rho`.
    pub fn with_flat_core(mut self, rho: f64) -> Self {
        self.flat_below = Some(rho);
        self
    }

    pub fn dim(&self) -> Dimension {
        self.n
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn flat_below(&self) -> Option<f64> {
        self.flat_below
    }

    pub fn constant_value(&self) -> Option<f64> {
        self.constant
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry.clone()
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        (self.eval)(x)
    }

    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        match &self.gradient {
            Some(g) => g(x),
            None => central_gradient(|y| (self.eval)(y), x, 1e-6 * vector::norm(x).max(1e-2)),
        }
    }

    /// `K̃(x) = K(x/|x|²)`.
    pub fn kelvin(&self) -> Self {
        if self.constant.is_some() {
            return self.clone();
        }
        let inner = self.clone();
        let eval = move |x: &[f64]| {
            let r2 = vector::norm_sq(x);
            if r2 == 0.0 {
                return Err(Error::domain("inverted curvature is undefined at the origin"));
            }
            inner.value(&vector::scale(x, 1.0 / r2))
        };
        let inner = self.clone();
        let gradient = move |x: &[f64]| {
            let r2 = vector::norm_sq(x);
            if r2 == 0.0 {
                return Err(Error::domain("inverted curvature is undefined at the origin"));
            }
            let g = inner.gradient(&vector::scale(x, 1.0 / r2))?;
            let xg = vector::dot(x, &g);
            Ok(x.iter().zip(&g).map(|(xi, gi)| gi / r2 - 2.0 * xi * xg / (r2 * r2)).collect())
        };
        let tail = match self.flat_below {
            Some(rho) if rho > 0.0 => Tail::ConstantOutside { radius: 1.0 / rho },
            _ => Tail::General,
        };
        let flat_below = match self.tail {
            Tail::ConstantOutside { radius } if radius > 0.0 => Some(1.0 / radius),
            _ => None,
        };
        CurvatureFunction {
            n: self.n,
            eval: Arc::new(eval),
            gradient: Some(Arc::new(gradient)),
            tail,
            flat_below,
            constant: None,
            symmetry: self.symmetry.clone(),
        }
    }

    /// The curvature solved by a deformed Delaunay-Fowler field whose base
    /// profile solves the equation with `K`.
    pub fn deformed(&self, d: &DeformedDelaunay) -> Self {
        if self.constant.is_some() {
            return self.clone();
        }
        let inner = self.clone();
        let d = d.clone();
        let symmetry = Field::symmetry(&d);
        CurvatureFunction::new(self.n, symmetry, Tail::General, move |x| inner.value(&d.curvature_point(x)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn kelvin_of_a_compactly_varying_curvature() {
        let n = dim(3);
        let k = CurvatureFunction::new(n, Symmetry::Radial, Tail::ConstantOutside { radius: 2.0 }, |x| {
            let r = vector::norm(x);
            Ok(if r < 2.0 { 3.0 + (2.0 - r).powi(3) } else { 3.0 })
        });
        let kt = k.kelvin();
        assert_eq!(kt.flat_below(), Some(0.5));
        let x = [0.1, 0.2, 0.0];
        let y = vector::scale(&x, 1.0 / vector::norm_sq(&x));
        assert_eq!(kt.value(&x).unwrap(), k.value(&y).unwrap());
    }

    #[test]
    fn kelvin_gradient_matches_differences() {
        let n = dim(3);
        let k =
            CurvatureFunction::new(n, Symmetry::General, Tail::General, |x| Ok(1.0 + x[0] * x[0] - 0.5 * x[1] * x[2]))
                .with_gradient(|x| Ok(vec![2.0 * x[0], -0.5 * x[2], -0.5 * x[1]]));
        let kt = k.kelvin();
        let x = [0.4, -0.3, 0.8];
        let g = kt.gradient(&x).unwrap();
        let fd = central_gradient(|y| kt.value(y), &x, 1e-6).unwrap();
        for (a, b) in g.iter().zip(&fd) {
            assert!((a - b).abs() < 1e-7);
        }
    }
}
