use crate::error::{Error, Result};
use crate::field::{check_dim, Field, Symmetry};
use crate::numerics::{vector, Dimension};

/// Inversion radius of a Kelvin transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KelvinParams {
    a: f64,
}

impl KelvinParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain(format!("inversion radius must be positive, got {a}")));
        }
        Ok(KelvinParams { a })
    }

    pub fn unit() -> Self {
        KelvinParams { a: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `a² x / |x|²`.
    pub fn invert(&self, x: &[f64]) -> Result<Vec<f64>> {
        let r2 = vector::norm_sq(x);
        if r2 == 0.0 {
            return Err(Error::domain("Kelvin transform is undefined at the origin"));
        }
        Ok(vector::scale(x, self.a * self.a / r2))
    }
}

/// `|x|^{2-n} a^{n-2} u(a² x / |x|²)`.
pub fn kelvin(u: &dyn Field, p: KelvinParams, x: &[f64]) -> Result<f64> {
    let n = u.dim();
    check_dim(n, x)?;
    let y = p.invert(x)?;
    let m = n.as_f64() - 2.0;
    Ok((p.a / vector::norm(x)).powf(m) * u.value(&y)?)
}

/// Image of a spherical solution `(λ, ξ)` under the Kelvin transform of radius `a`.
pub fn kelvin_spherical_params(n: Dimension, lambda: f64, xi: &[f64], a: f64) -> Result<(f64, Vec<f64>)> {
    check_dim(n, xi)?;
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
    }
    KelvinParams::new(a)?;
    let c = a * a / (lambda * lambda + vector::norm_sq(xi));
    Ok((c * lambda, vector::scale(xi, c)))
}

/// The Kelvin transform of a field, with the chain-rule gradient.
#[derive(Debug, Clone)]
pub struct KelvinField<F> {
    inner: F,
    params: KelvinParams,
}

impl<F: Field> KelvinField<F> {
    pub fn new(inner: F, params: KelvinParams) -> Self {
        KelvinField { inner, params }
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: Field> Field for KelvinField<F> {
    fn dim(&self) -> Dimension {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        kelvin(&self.inner, self.params, x)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        check_dim(n, x)?;
        let y = self.params.invert(x)?;
        let (u, g) = (self.inner.value(&y)?, self.inner.gradient(&y)?);
        let r2 = vector::norm_sq(x);
        let r = r2.sqrt();
        let a = self.params.a;
        let m = n.as_f64() - 2.0;
        let pre = a.powf(m);
        let xg = vector::dot(x, &g);
        Ok((0..x.len())
            .map(|i| {
                let jt = a * a * (g[i] / r2 - 2.0 * x[i] * xg / (r2 * r2));
                pre * (-m * r.powf(-n.as_f64()) * x[i] * u + r.powf(-m) * jt)
            })
            .collect())
    }

    fn symmetry(&self) -> Symmetry {
        self.inner.symmetry()
    }
}

/// `x ↦ u(x − shift)`.
#[derive(Debug, Clone)]
pub struct Translated<F> {
    inner: F,
    shift: Vec<f64>,
}

impl<F: Field> Translated<F> {
    pub fn new(inner: F, shift: Vec<f64>) -> Result<Self> {
        check_dim(inner.dim(), &shift)?;
        Ok(Translated { inner, shift })
    }
}

impl<F: Field> Field for Translated<F> {
    fn dim(&self) -> Dimension {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x)?;
        self.inner.value(&vector::sub(x, &self.shift))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x)?;
        self.inner.gradient(&vector::sub(x, &self.shift))
    }

    fn symmetry(&self) -> Symmetry {
        if vector::norm(&self.shift) == 0.0 {
            return self.inner.symmetry();
        }
        let axis = vector::normalized(&self.shift).expect("non-zero shift");
        match self.inner.symmetry() {
            Symmetry::Radial => Symmetry::Axisymmetric(axis),
            Symmetry::Axisymmetric(b) if vector::dot(&b, &axis).abs() > 1.0 - 1e-14 => Symmetry::Axisymmetric(axis),
            _ => Symmetry::General,
        }
    }
}
