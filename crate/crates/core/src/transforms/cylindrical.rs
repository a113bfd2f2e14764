use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{check_dim, Field, Symmetry};
use crate::numerics::{vector, Dimension};
use crate::solutions::Profile;

/// Sign convention of the cylinder coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `t = −ln|x|`: the origin sits at `t = +∞`.
    Inward,
    /// `s = ln|x|`: the origin sits at `s = −∞`.
    Outward,
}

impl Orientation {
    /// Cylinder coordinate of the radius `r`.
    pub fn coordinate(self, r: f64) -> f64 {
        match self {
            Orientation::Inward => -r.ln(),
            Orientation::Outward => r.ln(),
        }
    }

    /// Radius at the cylinder coordinate `t`.
    pub fn radius(self, t: f64) -> f64 {
        match self {
            Orientation::Inward => (-t).exp(),
            Orientation::Outward => t.exp(),
        }
    }
}

type CylFn = dyn Fn(f64, f64) -> Result<f64> + Send + Sync;

/// An axisymmetric function `v(t, φ)` on ℝ × S^{n-1}, where `φ` is the polar
/// angle from `axis` (or is ignored when there is no axis).
#[derive(Clone)]
pub struct CylindricalField {
    n: Dimension,
    orientation: Orientation,
    axis: Option<Vec<f64>>,
    eval: Arc<CylFn>,
}

impl fmt::Debug for CylindricalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CylindricalField")
            .field("n", &self.n)
            .field("orientation", &self.orientation)
            .field("axis", &self.axis)
            .finish()
    }
}

impl CylindricalField {
    pub fn new(
        n: Dimension,
        orientation: Orientation,
        axis: Option<Vec<f64>>,
        eval: impl Fn(f64, f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Result<Self> {
        let axis = match axis {
            Some(a) => {
                check_dim(n, &a)?;
                Some(vector::normalized(&a).ok_or_else(|| Error::domain("axis must be non-zero"))?)
            }
            None => None,
        };
        Ok(CylindricalField { n, orientation, axis, eval: Arc::new(eval) })
    }

    /// The angle-independent field `v(t, φ) = profile(t)`.
    pub fn from_profile(profile: Arc<dyn Profile>, orientation: Orientation) -> Self {
        let n = profile.dim();
        CylindricalField { n, orientation, axis: None, eval: Arc::new(move |t, _| Ok(profile.value(t))) }
    }

    pub fn dim(&self) -> Dimension {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn axis(&self) -> Option<&[f64]> {
        self.axis.as_deref()
    }

    pub fn value(&self, t: f64, phi: f64) -> Result<f64> {
        (self.eval)(t, phi)
    }

    /// The same field expressed in the other convention: `t ↦ −t` when the
    /// orientation changes.
    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        if orientation == self.orientation {
            return self.clone();
        }
        let inner = self.eval.clone();
        CylindricalField {
            n: self.n,
            orientation,
            axis: self.axis.clone(),
            eval: Arc::new(move |t, phi| inner(-t, phi)),
        }
    }
}

/// `v = |x|^{(n-2)/2} u(x)` in the chosen orientation.
pub fn to_cylinder(u: Arc<dyn Field>, orientation: Orientation) -> Result<CylindricalField> {
    let n = u.dim();
    let axis = match u.symmetry() {
        Symmetry::Radial => None,
        Symmetry::Axisymmetric(a) => Some(a),
        Symmetry::General => {
            return Err(Error::UnsupportedSymmetry("cylindrical fields need a radial or axisymmetric source".into()))
        }
    };
    let frame_axis = axis.clone().unwrap_or_else(|| vector::unit(n.get(), 0));
    let perp = vector::orthogonal_unit(&frame_axis);
    let w = n.conformal_weight();
    CylindricalField::new(n, orientation, axis, move |t, phi| {
        let r = orientation.radius(t);
        let x = vector::polar_point(r, phi, &frame_axis, &perp);
        Ok(r.powf(w) * u.value(&x)?)
    })
}

/// `u(x) = |x|^{-(n-2)/2} v(t(x), φ(x))`.
#[derive(Debug, Clone)]
pub struct FromCylinder {
    v: CylindricalField,
}

pub fn from_cylinder(v: CylindricalField) -> FromCylinder {
    FromCylinder { v }
}

impl Field for FromCylinder {
    fn dim(&self) -> Dimension {
        self.v.n
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.v.n, x)?;
        let r = vector::norm(x);
        if r == 0.0 {
            return Err(Error::domain("cylindrical coordinates are undefined at the origin"));
        }
        let phi = match &self.v.axis {
            Some(a) => (vector::dot(x, a) / r).clamp(-1.0, 1.0).acos(),
            None => 0.0,
        };
        let t = self.v.orientation.coordinate(r);
        Ok(r.powf(-self.v.n.conformal_weight()) * self.v.value(t, phi)?)
    }

    fn symmetry(&self) -> Symmetry {
        match &self.v.axis {
            Some(a) => Symmetry::Axisymmetric(a.clone()),
            None => Symmetry::Radial,
        }
    }
}

/// `v*(t, φ) = v(2 t1 − t, φ)`.
pub fn reflect(v: &CylindricalField, t1: f64) -> CylindricalField {
    let inner = v.eval.clone();
    CylindricalField {
        n: v.n,
        orientation: v.orientation,
        axis: v.axis.clone(),
        eval: Arc::new(move |t, phi| inner(2.0 * t1 - t, phi)),
    }
}

/// Centered-difference residual of
/// `∂²_t v + Δ_θ v − ((n-2)/2)² v + n(n-2) v^{(n+2)/(n-2)}`, with the
/// axisymmetric `Δ_θ v = ∂²_φ v + (n-2) cot φ ∂_φ v`.
///
/// Stencil points beyond the poles are mapped back by `φ ↦ −φ` and
/// `φ ↦ 2π − φ`, which is exact for axisymmetric data; on the axis itself the
/// angular part is its limit `(n-1) ∂²_φ v`.
pub fn cylindrical_residual(v: &CylindricalField, t: f64, phi: f64, h: f64) -> Result<f64> {
    use std::f64::consts::PI;
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::Stencil(format!("step must lie in (0, 0.5), got {h}")));
    }
    if !(0.0..=PI).contains(&phi) || !t.is_finite() {
        return Err(Error::Stencil(format!("point (t, φ) = ({t}, {phi}) is off the cylinder")));
    }
    let n = v.n;
    let fold = |p: f64| {
        if p < 0.0 {
            -p
        } else if p > PI {
            2.0 * PI - p
        } else {
            p
        }
    };
    let c = v.value(t, phi)?;
    let vtt = (v.value(t + h, phi)? - 2.0 * c + v.value(t - h, phi)?) / (h * h);
    let angular = if v.axis.is_none() {
        0.0
    } else {
        let vp = v.value(t, fold(phi + h))?;
        let vm = v.value(t, fold(phi - h))?;
        let vpp = (vp - 2.0 * c + vm) / (h * h);
        let s = phi.sin();
        if s < 1e-12 {
            (n.as_f64() - 1.0) * vpp
        } else {
            vpp + (n.as_f64() - 2.0) * phi.cos() / s * (vp - vm) / (2.0 * h)
        }
    };
    let a2 = n.conformal_weight().powi(2);
    Ok(vtt + angular - a2 * c + n.sphere_curvature() * c.powf(n.critical_exponent()))
}
