use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{check_dim, Field, Symmetry};
use crate::numerics::{vector, Dimension};
use crate::solutions::{DelaunayProfile, Profile};

use super::cylindrical::{CylindricalField, Orientation};

/// Kelvin-translate-Kelvin deformation of a radial profile, dilated by `e^T`
/// (inversion radius 1):
///
/// ```text
/// u(x) = |x|^{(2-n)/2} |θ − ξ'|x||^{(2-n)/2} v(−ln|x| + T + ln|θ − ξ'|x||),   ξ' = ξ e^{-T}
/// ```
///
/// The base profile must be even about `t = 0`. The field is singular at the
/// origin and at `x = e^T ξ/|ξ|²`.
#[derive(Debug, Clone)]
pub struct DeformedDelaunay {
    n: Dimension,
    base: Arc<dyn Profile>,
    xi: Vec<f64>,
    shift: f64,
    xi_eff: Vec<f64>,
}

pub fn deform_delaunay(base: Arc<DelaunayProfile>, xi: Vec<f64>, shift: f64) -> Result<DeformedDelaunay> {
    DeformedDelaunay::new(base, xi, shift)
}

impl DeformedDelaunay {
    pub fn new(base: Arc<dyn Profile>, xi: Vec<f64>, shift: f64) -> Result<Self> {
        let n = base.dim();
        check_dim(n, &xi)?;
        if !shift.is_finite() {
            return Err(Error::domain("translation parameter must be finite"));
        }
        let xi_eff = vector::scale(&xi, (-shift).exp());
        Ok(DeformedDelaunay { n, base, xi, shift, xi_eff })
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn base(&self) -> &Arc<dyn Profile> {
        &self.base
    }

    /// The finite singular point `e^T ξ/|ξ|²`, if `ξ ≠ 0`.
    pub fn singular_point(&self) -> Option<Vec<f64>> {
        let s = vector::norm_sq(&self.xi_eff);
        (s > 0.0).then(|| vector::scale(&self.xi_eff, 1.0 / s))
    }

    /// `(r, z, ρ)` with `z = x/r − ξ' r`, `ρ = |z|`.
    fn frame(&self, x: &[f64]) -> Result<(f64, Vec<f64>, f64)> {
        check_dim(self.n, x)?;
        let r = vector::norm(x);
        if r == 0.0 {
            return Err(Error::domain("deformed solution is singular at the origin"));
        }
        let z: Vec<f64> = x.iter().zip(&self.xi_eff).map(|(a, b)| a / r - b * r).collect();
        let rho = vector::norm(&z);
        if !(rho > 1e-300) {
            return Err(Error::domain("deformed solution is singular at e^T ξ/|ξ|²"));
        }
        Ok((r, z, rho))
    }

    /// Cylindrical form `v(t, φ) = |θ − ξ'e^{-t}|^{(2-n)/2} v_ε(t + T + ln|θ − ξ'e^{-t}|)`
    /// with `t = −ln|x|` and `φ` the angle from `ξ`.
    pub fn cylindrical(&self) -> CylindricalField {
        let base = self.base.clone();
        let c = vector::norm(&self.xi_eff);
        let am = -self.n.conformal_weight();
        let shift = self.shift;
        let axis = vector::normalized(&self.xi);
        CylindricalField::new(self.n, Orientation::Inward, axis, move |t, phi| {
            let e = (-t).exp() * c;
            let rho2 = 1.0 - 2.0 * e * phi.cos() + e * e;
            if !(rho2 > 0.0) {
                return Err(Error::domain("deformed solution is singular here"));
            }
            let ln_rho = 0.5 * rho2.ln();
            Ok((am * ln_rho).exp() * base.value(t + shift + ln_rho))
        })
        .expect("axis is normalized")
    }

    /// Point at which the base curvature is sampled: `K_{ξ,T}(x) = K(y(x))` with
    /// `y = (w/|w|² − ξ)/|w/|w|² − ξ|²`, `w = e^{-T} x`.
    pub fn curvature_point(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.n, x)?;
        let w = vector::scale(x, (-self.shift).exp());
        let w2 = vector::norm_sq(&w);
        if w2 == 0.0 {
            return Err(Error::domain("curvature transform is undefined at the origin"));
        }
        let z = vector::axpy(&vector::scale(&w, 1.0 / w2), -1.0, &self.xi);
        let z2 = vector::norm_sq(&z);
        if z2 == 0.0 {
            return Err(Error::domain("curvature transform is singular at e^T ξ/|ξ|²"));
        }
        Ok(vector::scale(&z, 1.0 / z2))
    }
}

impl Field for DeformedDelaunay {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let (r, _, rho) = self.frame(x)?;
        let am = -self.n.conformal_weight();
        Ok((r * rho).powf(am) * self.base.value(-r.ln() + self.shift + rho.ln()))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (r, z, rho) = self.frame(x)?;
        let am = -self.n.conformal_weight();
        let (v, vp) = self.base.eval(-r.ln() + self.shift + rho.ln());
        let u = (r * rho).powf(am) * v;
        let r2 = r * r;
        let zx = vector::dot(&z, x);
        let zxi = vector::dot(&z, &self.xi_eff);
        let ratio = vp / v;
        Ok((0..x.len())
            .map(|k| {
                let jtz = z[k] / r - zx * x[k] / (r2 * r) - zxi * x[k] / r;
                let drho = jtz / (rho * rho);
                let dr = x[k] / r2;
                u * (am * (dr + drho) + ratio * (drho - dr))
            })
            .collect())
    }

    fn symmetry(&self) -> Symmetry {
        match vector::normalized(&self.xi) {
            Some(a) => Symmetry::Axisymmetric(a),
            None => Symmetry::Radial,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{central_gradient, pde_residual};
    use crate::solutions::integrate_delaunay;
    use crate::transforms::{cylindrical_residual, KelvinField, KelvinParams, Translated};

    fn profile(n: usize, eps: f64) -> Arc<DelaunayProfile> {
        Arc::new(integrate_delaunay(Dimension::new(n).unwrap(), eps, 1, 1e-12).unwrap())
    }

    #[test]
    fn undeformed_is_the_radial_profile() {
        let p = profile(3, 0.2);
        let d = deform_delaunay(p.clone(), vec![0.0; 3], 0.0).unwrap();
        let x = [0.3, 0.1, -0.5];
        let r = vector::norm(&x);
        let expect = r.powf(-0.5) * p.value(-r.ln());
        assert!((d.value(&x).unwrap() - expect).abs() < 1e-15);
        let t = deform_delaunay(p.clone(), vec![0.0; 3], 1.3).unwrap();
        let expect = r.powf(-0.5) * p.value(-r.ln() + 1.3);
        assert!((t.value(&x).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_kelvin_translate_kelvin() {
        let p = profile(3, 0.2);
        let xi = vec![0.3, -0.1, 0.2];
        let radial: Arc<dyn Profile> = p.clone();
        let base = DeformedDelaunay::new(radial, vec![0.0; 3], 0.0).unwrap();
        let ktk = KelvinField::new(
            Translated::new(KelvinField::new(base, KelvinParams::unit()), xi.clone()).unwrap(),
            KelvinParams::unit(),
        );
        let shift = 0.7;
        let d = deform_delaunay(p, xi, shift).unwrap();
        let dil = (-shift).exp();
        for x in [[0.2, 0.4, -0.3], [1.5, -0.2, 0.9], [-0.05, 0.01, 0.02]] {
            let y = vector::scale(&x, dil);
            let expect = (shift * -0.5f64).exp() * ktk.value(&y).unwrap();
            let got = d.value(&x).unwrap();
            assert!(((got - expect) / expect).abs() < 1e-12, "{got} vs {expect}");
        }
    }

    #[test]
    fn depends_on_xi_through_the_angle_only() {
        let p = profile(4, 0.1);
        let d = deform_delaunay(p, vec![0.0, 0.0, 0.4, 0.0], 0.2).unwrap();
        let x = [0.3, 0.5, 0.2, -0.1];
        // rotation in the (x0, x1, x3) subspace fixes ξ
        let y = [0.5, -0.3, 0.2, -0.1];
        assert!((d.value(&x).unwrap() - d.value(&y).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn gradient_matches_differences() {
        let p = profile(3, 0.25);
        let d = deform_delaunay(p, vec![0.4, 0.2, 0.0], 0.3).unwrap();
        for x in [[0.3, -0.2, 0.5], [2.0, 1.0, -0.4]] {
            let g = d.gradient(&x).unwrap();
            let fd = central_gradient(|y| d.value(y), &x, 1e-6).unwrap();
            for (a, b) in g.iter().zip(&fd) {
                assert!((a - b).abs() < 1e-7 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn singular_points_are_domain_errors() {
        let p = profile(3, 0.2);
        let d = deform_delaunay(p, vec![0.5, 0.0, 0.0], 0.0).unwrap();
        let s = d.singular_point().unwrap();
        assert!((s[0] - 2.0).abs() < 1e-15);
        assert!(d.value(&s).is_err());
        assert!(d.value(&[0.0; 3]).is_err());
    }

    #[test]
    fn solves_the_equation() {
        let n = Dimension::new(3).unwrap();
        let p = profile(3, 0.2);
        let d = deform_delaunay(p, vec![0.3, 0.0, 0.0], 0.0).unwrap();
        for x in [[0.4, 0.3, -0.2], [-0.8, 0.1, 0.5]] {
            let res = pde_residual(&d, n.sphere_curvature(), &x, 1e-3).unwrap();
            assert!(res.abs() < 1e-4, "residual {res}");
        }
        let v = d.cylindrical();
        for (t, phi) in [(0.5, 0.7), (-0.2, 2.5), (1.0, 0.0)] {
            let res = cylindrical_residual(&v, t, phi, 1e-3).unwrap();
            assert!(res.abs() < 1e-5, "residual {res}");
        }
    }

    #[test]
    fn cylindrical_form_matches_the_field() {
        let p = profile(5, 0.15);
        let d = deform_delaunay(p, vec![0.0, 0.2, 0.0, 0.1, 0.0], -0.4).unwrap();
        let v = d.cylindrical();
        let back = crate::transforms::from_cylinder(v);
        let x = [0.3, 0.2, -0.6, 0.4, 0.1];
        let (a, b) = (back.value(&x).unwrap(), d.value(&x).unwrap());
        assert!(((a - b) / b).abs() < 1e-12);
    }
}
