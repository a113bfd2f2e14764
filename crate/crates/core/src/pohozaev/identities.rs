use crate::error::{Error, Result};
use crate::field::{Field, Symmetry};
use crate::numerics::{integrate_adaptive, least_squares_slope, sphere_area, vector, QuadratureKind, QuadratureRule};

use super::curvature::CurvatureFunction;

/// Common symmetry axis of `u` and `K`: `None` when both are radial.
fn common_axis(u: &dyn Field, k: &CurvatureFunction) -> Result<Option<Vec<f64>>> {
    let unsupported = |what: &str| {
        Err(Error::UnsupportedSymmetry(format!("sphere integrals need radial or axisymmetric data; {what}")))
    };
    match (u.symmetry(), k.symmetry()) {
        (Symmetry::General, _) => unsupported("u has no symmetry axis"),
        (_, Symmetry::General) => unsupported("K has no symmetry axis"),
        (Symmetry::Radial, Symmetry::Radial) => Ok(None),
        (Symmetry::Axisymmetric(a), Symmetry::Radial) | (Symmetry::Radial, Symmetry::Axisymmetric(a)) => Ok(Some(a)),
        (Symmetry::Axisymmetric(a), Symmetry::Axisymmetric(b)) => {
            if vector::dot(&a, &b).abs() > 1.0 - 1e-12 {
                Ok(Some(a))
            } else {
                unsupported("u and K have different axes")
            }
        }
    }
}

fn check_polar(quad: &QuadratureRule, n: usize) -> Result<()> {
    let alpha = (n as f64 - 3.0) / 2.0;
    match quad.kind {
        QuadratureKind::GaussJacobi { alpha: a } if a == alpha => Ok(()),
        _ => Err(Error::domain(format!("sphere integrals in dimension {n} need the polar rule with alpha = {alpha}"))),
    }
}

/// `∫_{S_r} f dS` for an axisymmetric integrand given as a function of the
/// point on the sphere, componentwise; exact area factor for radial integrands.
fn sphere_integral<const M: usize>(
    n: usize,
    r: f64,
    axis: Option<&[f64]>,
    quad: &QuadratureRule,
    mut f: impl FnMut(&[f64]) -> Result<[f64; M]>,
) -> Result<[f64; M]> {
    match axis {
        None => {
            let x = vector::scale(&vector::unit(n, 0), r);
            let w = sphere_area(n - 1)? * r.powi(n as i32 - 1);
            Ok(f(&x)?.map(|v| w * v))
        }
        Some(axis) => {
            check_polar(quad, n)?;
            let perp = vector::orthogonal_unit(axis);
            let mut acc = [0.0; M];
            for (&phi, &w) in quad.nodes.iter().zip(&quad.weights) {
                let v = f(&vector::polar_point(r, phi, axis, &perp))?;
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += w * b;
                }
            }
            let w = sphere_area(n - 2)? * r.powi(n as i32 - 1);
            Ok(acc.map(|v| w * v))
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("sphere radius must be positive, got {r}")));
    }
    Ok(())
}

/// `P(u, r) = ∫_{S_r} [ r u_r² − (r/2)|∇u|² + ((n-2)/(2n)) r K u^{2n/(n-2)} + ((n-2)/2) u u_r ] dS`.
pub fn radial_pohozaev(u: &dyn Field, k: &CurvatureFunction, r: f64, quad: &QuadratureRule) -> Result<f64> {
    Ok(radial_with_magnitude(u, k, r, quad)?.0)
}

/// `P(u, r)` together with the integral of the absolute values of its four
/// terms, which scales the effect of pointwise errors in `u`.
pub fn radial_with_magnitude(
    u: &dyn Field,
    k: &CurvatureFunction,
    r: f64,
    quad: &QuadratureRule,
) -> Result<(f64, f64)> {
    check_radius(r)?;
    let n = u.dim();
    let axis = common_axis(u, k)?;
    let (q, c, a) = (n.mass_exponent(), (n.as_f64() - 2.0) / (2.0 * n.as_f64()), n.conformal_weight());
    let [p, m] = sphere_integral(n.get(), r, axis.as_deref(), quad, |x| {
        let v = u.value(x)?;
        let g = u.gradient(x)?;
        let ur = vector::dot(&g, x) / r;
        let terms = [r * ur * ur, -0.5 * r * vector::norm_sq(&g), c * r * k.value(x)? * v.powf(q), a * v * ur];
        Ok([terms.iter().sum(), terms.iter().map(|t| t.abs()).sum()])
    })?;
    Ok((p, m))
}

/// All components `P_i(u, r)`, `i = 1..n`, of
/// `∫_{S_r} [ ∂_i u u_r − ½|∇u|² ν_i + ((n-2)/(2n)) K u^{2n/(n-2)} ν_i ] dS`.
///
/// For axisymmetric data the vector is parallel to the axis, so one polar
/// integral of the axial component suffices; for radial data it vanishes.
pub fn translational_pohozaev_vector(
    u: &dyn Field,
    k: &CurvatureFunction,
    r: f64,
    quad: &QuadratureRule,
) -> Result<Vec<f64>> {
    Ok(translational_with_magnitude(u, k, r, quad)?.0)
}

pub fn translational_with_magnitude(
    u: &dyn Field,
    k: &CurvatureFunction,
    r: f64,
    quad: &QuadratureRule,
) -> Result<(Vec<f64>, f64)> {
    check_radius(r)?;
    let n = u.dim();
    let Some(axis) = common_axis(u, k)? else {
        return Ok((vec![0.0; n.get()], 0.0));
    };
    let (q, c) = (n.mass_exponent(), (n.as_f64() - 2.0) / (2.0 * n.as_f64()));
    let [along, m] = sphere_integral(n.get(), r, Some(&axis), quad, |x| {
        let v = u.value(x)?;
        let g = u.gradient(x)?;
        let ur = vector::dot(&g, x) / r;
        let nu = vector::dot(x, &axis) / r;
        let terms = [vector::dot(&g, &axis) * ur, -0.5 * vector::norm_sq(&g) * nu, c * k.value(x)? * v.powf(q) * nu];
        Ok([terms.iter().sum(), terms.iter().map(|t| t.abs()).sum()])
    })?;
    Ok((vector::scale(&axis, along), m))
}

/// `P_i(u, r)` for the 1-based axis index `i`.
pub fn translational_pohozaev(
    u: &dyn Field,
    k: &CurvatureFunction,
    r: f64,
    i: usize,
    quad: &QuadratureRule,
) -> Result<f64> {
    let n = u.dim().get();
    if i == 0 || i > n {
        return Err(Error::domain(format!("axis index must lie in 1..={n}, got {i}")));
    }
    Ok(translational_pohozaev_vector(u, k, r, quad)?[i - 1])
}

/// Value of a bulk integral with its quadrature error estimate and, when the
/// ball reaches the origin, the fitted exponent `β` in
/// `ρⁿ max_{S_ρ} |∇K| u^{2n/(n-2)} ≈ Cρ^β` as `ρ → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkCorrection {
    pub value: f64,
    pub error: f64,
    pub exponent: Option<f64>,
}

/// Smallest fitted exponent accepted as integrable.
const MIN_EXPONENT: f64 = 0.01;

/// `((n-2)/(2n)) ∫_{r1 < |x| < r2} ∂_i K u^{2n/(n-2)} dx`, `i` 1-based.
pub fn shell_bulk(
    u: &dyn Field,
    k: &CurvatureFunction,
    r1: f64,
    r2: f64,
    i: usize,
    quad: &QuadratureRule,
) -> Result<BulkCorrection> {
    check_radius(r1)?;
    check_radius(r2)?;
    if r1 > r2 {
        return Err(Error::domain(format!("shell needs r1 <= r2, got {r1} > {r2}")));
    }
    let n = u.dim().get();
    if i == 0 || i > n {
        return Err(Error::domain(format!("axis index must lie in 1..={n}, got {i}")));
    }
    let lo = r1.max(k.flat_below().unwrap_or(0.0));
    if k.constant_value().is_some() || lo >= r2 {
        return Ok(BulkCorrection { value: 0.0, error: 0.0, exponent: None });
    }
    let (value, error) = log_radial_bulk(u, k, lo.ln(), r2.ln(), i, quad)?;
    Ok(BulkCorrection { value, error, exponent: None })
}

fn log_radial_bulk(
    u: &dyn Field,
    k: &CurvatureFunction,
    tau_lo: f64,
    tau_hi: f64,
    i: usize,
    quad: &QuadratureRule,
) -> Result<(f64, f64)> {
    let n = u.dim();
    let Some(axis) = common_axis(u, k)? else {
        return Ok((0.0, 0.0));
    };
    let q = n.mass_exponent();
    let c = (n.as_f64() - 2.0) / (2.0 * n.as_f64());
    // ∫ ρ^{n-1} dρ ∫_{S} = ∫ e^{nτ} dτ ∫_{S}, applied to the axial component.
    let (along, err) = integrate_adaptive(
        |tau| {
            let rho = tau.exp();
            sphere_integral(n.get(), rho, Some(&axis), quad, |x| {
                Ok([vector::dot(&k.gradient(x)?, &axis) * u.value(x)?.powf(q)])
            })
            .map(|[s]| s * rho)
        },
        tau_lo,
        tau_hi,
        1e-12,
    )?;
    Ok((c * along * axis[i - 1], (c * err * axis[i - 1]).abs()))
}

/// `((n-2)/(2n)) ∫_{B_o(r)} ∂_i K u^{2n/(n-2)} dx`, so that the invariant is
/// `P_i(u) = P_i(u, r) − bulk_correction`.
///
/// Integrability at the origin is checked by fitting
/// `ρⁿ max_{S_ρ} |∇K| u^{2n/(n-2)} ≈ Cρ^β` on spheres of radius `r·10^{-k}`,
/// `k = 1..8`. For `u ~ |x|^{-(n-2)/2}` this is the condition
/// `|∇K| ≤ C|x|^α` with `β = α`. A fitted `β ≤ 0.01` is a precondition error.
pub fn bulk_correction(
    u: &dyn Field,
    k: &CurvatureFunction,
    r: f64,
    i: usize,
    quad: &QuadratureRule,
) -> Result<BulkCorrection> {
    check_radius(r)?;
    let flat = k.flat_below().unwrap_or(0.0);
    if k.constant_value().is_some() || flat > 0.0 {
        return shell_bulk(u, k, flat.min(r), r, i, quad);
    }
    let n = u.dim();
    if i == 0 || i > n.get() {
        return Err(Error::domain(format!("axis index must lie in 1..={n}, got {i}")));
    }
    let Some(axis) = common_axis(u, k)? else {
        return Ok(BulkCorrection { value: 0.0, error: 0.0, exponent: None });
    };
    let perp = vector::orthogonal_unit(&axis);
    let q = n.mass_exponent();
    let mut pts = Vec::new();
    for j in 1..=8 {
        let rho = r * 10f64.powi(-j);
        let mut g: f64 = 0.0;
        for &phi in &quad.nodes {
            let x = vector::polar_point(rho, phi, &axis, &perp);
            g = g.max(vector::norm(&k.gradient(&x)?) * u.value(&x)?.powf(q));
        }
        if g > 0.0 {
            pts.push((rho.ln(), g.ln() + n.as_f64() * rho.ln()));
        }
    }
    if pts.len() < 2 {
        // ∇K vanishes near the origin to working precision
        let (value, error) = log_radial_bulk(u, k, (r * 1e-8).ln(), r.ln(), i, quad)?;
        return Ok(BulkCorrection { value, error, exponent: Some(f64::INFINITY) });
    }
    let beta = least_squares_slope(&pts);
    if !(beta > MIN_EXPONENT) {
        return Err(Error::Precondition(format!(
            "∂K/∂x_i u^q is not integrable at the origin: fitted ρⁿ|∇K|u^q ~ ρ^{beta:.3}"
        )));
    }
    // neglected core ≲ (ρ_lo/r)^β relative
    let depth = (12.0 * std::f64::consts::LN_10 / beta).min(600.0);
    let (value, error) = log_radial_bulk(u, k, r.ln() - depth, r.ln(), i, quad)?;
    Ok(BulkCorrection { value, error, exponent: Some(beta) })
}
