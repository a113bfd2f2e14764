use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::field::{check_dim, Field, Symmetry};
use crate::numerics::{vector, Dimension, QuadratureKind, QuadratureRule, SphereMeasure};

/// `u(x) = (λ / (λ² + |x − ξ|²))^{(n-2)/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalSolution {
    n: Dimension,
    lambda: f64,
    xi: Vec<f64>,
}

impl SphericalSolution {
    pub fn new(n: Dimension, lambda: f64, xi: Vec<f64>) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
        }
        check_dim(n, &xi)?;
        Ok(SphericalSolution { n, lambda, xi })
    }

    /// `u_{1,0}`.
    pub fn standard(n: Dimension) -> Self {
        SphericalSolution { n, lambda: 1.0, xi: vec![0.0; n.get()] }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    /// Global maximum `λ^{-(n-2)/2}`, attained at `ξ`.
    pub fn peak_value(&self) -> f64 {
        self.lambda.powf(-self.n.conformal_weight())
    }

    fn denominator(&self, x: &[f64]) -> f64 {
        let d2: f64 = x.iter().zip(&self.xi).map(|(a, b)| (a - b) * (a - b)).sum();
        self.lambda * self.lambda + d2
    }
}

impl Field for SphericalSolution {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.n, x)?;
        Ok((self.lambda / self.denominator(x)).powf(self.n.conformal_weight()))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let u = self.value(x)?;
        let c = -(self.n.as_f64() - 2.0) * u / self.denominator(x);
        Ok(x.iter().zip(&self.xi).map(|(a, b)| c * (a - b)).collect())
    }

    fn symmetry(&self) -> Symmetry {
        match vector::normalized(&self.xi) {
            None => Symmetry::Radial,
            Some(axis) => Symmetry::Axisymmetric(axis),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEstimate {
    pub value: f64,
    pub error: f64,
}

/// `∫_{ℝⁿ} u^{2n/(n-2)} dx` by radial reduction about `ξ`.
///
/// The radius is mapped as `r = λ tan θ`, `θ ∈ (0, π/2)`, which turns the
/// algebraic tail into a smooth integrand. `quad` must be a Gauss-Legendre
/// rule; the error estimate compares it with the same rule on two halves.
pub fn spherical_mass(s: &SphericalSolution, quad: &QuadratureRule) -> Result<MassEstimate> {
    if quad.kind != QuadratureKind::GaussLegendre {
        return Err(Error::domain("spherical mass needs a Gauss-Legendre rule"));
    }
    let n = s.n;
    let q = n.mass_exponent();
    let dir = vector::unit(n.get(), 0);
    let integrand = |theta: f64| -> Result<f64> {
        let (sin, cos) = theta.sin_cos();
        let r = s.lambda * sin / cos;
        let x = vector::axpy(&s.xi, r, &dir);
        let dr = s.lambda / (cos * cos);
        Ok(s.value(&x)?.powf(q) * r.powi(n.get() as i32 - 1) * dr)
    };
    let whole = quad.on_interval(0.0, FRAC_PI_2)?.try_integrate(integrand)?;
    let left = quad.on_interval(0.0, FRAC_PI_2 / 2.0)?.try_integrate(integrand)?;
    let right = quad.on_interval(FRAC_PI_2 / 2.0, FRAC_PI_2)?.try_integrate(integrand)?;
    let omega = SphereMeasure::new(n).omega_n_minus_1;
    let fine = omega * (left + right);
    let error = (omega * whole - fine).abs();
    let requested = 1e-8 * fine.abs();
    if error > requested {
        return Err(Error::Accuracy { what: "spherical mass", achieved: error, requested });
    }
    Ok(MassEstimate { value: fine, error })
}
