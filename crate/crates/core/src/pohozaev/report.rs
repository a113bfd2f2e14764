use crate::error::Result;
use crate::field::Field;
use crate::numerics::polar_quadrature;

use super::curvature::CurvatureFunction;
use super::identities::{bulk_correction, radial_with_magnitude, translational_with_magnitude};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PohozaevSettings {
    /// Nodes of the polar rule; the error estimate uses twice as many.
    pub quad_nodes: usize,
    /// Number of trailing values inspected for a plateau.
    pub plateau_len: usize,
    /// Allowed spread of the plateau in units of the quadrature error.
    pub spread_factor: f64,
    /// Relative accuracy of the field values, e.g. the integrator tolerance
    /// behind a Delaunay profile.
    pub field_accuracy: f64,
}

impl Default for PohozaevSettings {
    fn default() -> Self {
        PohozaevSettings { quad_nodes: 64, plateau_len: 4, spread_factor: 10.0, field_accuracy: 1e-10 }
    }
}

/// Mean of the last `k` values when their spread is at most
/// `spread_factor · quad_error`; `None` otherwise or when fewer than
/// `max(k, 4)` values are available.
pub fn extract_invariant(values: &[f64], quad_error: f64, k: usize, spread_factor: f64) -> Option<f64> {
    if values.len() < k.max(4) || k == 0 {
        return None;
    }
    let tail = &values[values.len() - k..];
    if tail.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    (hi - lo <= spread_factor * quad_error).then(|| tail.iter().sum::<f64>() / k as f64)
}

/// Pohozaev integrals of a field over a sequence of spheres, ordered toward
/// the limit of interest (last entry closest to it).
#[derive(Debug, Clone)]
pub struct PohozaevReport {
    pub n: usize,
    pub radii: Vec<f64>,
    pub p_values: Vec<f64>,
    /// `pi_values[j][i]` is `P_{i+1}` on sphere `j`, without bulk correction.
    pub pi_values: Vec<Vec<f64>>,
    /// Bulk corrections subtracted before extracting the translational invariants.
    pub bulk: Vec<Vec<f64>>,
    pub p_invariant: Option<f64>,
    pub pi_invariant: Option<Vec<f64>>,
    /// Error estimate used for the radial plateau.
    pub p_error: f64,
    /// Error estimate used for the translational plateau.
    pub pi_error: f64,
    /// The larger of the two.
    pub quad_error: f64,
}

/// Evaluates `P(u, r)` and `P_i(u, r)` on every sphere in `radii` and extracts
/// the invariants from the trailing plateau.
///
/// The error estimate is the largest of the change between the `m`- and
/// `2m`-node polar rules, the bulk quadrature errors, and `field_accuracy`
/// times the integral of the absolute values of the integrand terms.
pub fn pohozaev_report(
    u: &dyn Field,
    k: &CurvatureFunction,
    radii: &[f64],
    settings: &PohozaevSettings,
) -> Result<PohozaevReport> {
    let n = u.dim();
    let quad = polar_quadrature(n, settings.quad_nodes)?;
    let fine = polar_quadrature(n, 2 * settings.quad_nodes)?;
    let mut p_values = Vec::with_capacity(radii.len());
    let mut pi_values = Vec::with_capacity(radii.len());
    let mut bulk = Vec::with_capacity(radii.len());
    let (mut p_error, mut pi_error): (f64, f64) = (0.0, 0.0);
    let (mut p_scale, mut pi_scale): (f64, f64) = (0.0, 0.0);
    for &r in radii {
        let (p, pm) = radial_with_magnitude(u, k, r, &quad)?;
        let (pf, _) = radial_with_magnitude(u, k, r, &fine)?;
        let (pi, pim) = translational_with_magnitude(u, k, r, &quad)?;
        let (pif, _) = translational_with_magnitude(u, k, r, &fine)?;
        p_error = p_error.max((p - pf).abs()).max(settings.field_accuracy * pm);
        p_scale = p_scale.max(p.abs());
        pi_error = pi_error.max(settings.field_accuracy * pim);
        for (a, b) in pi.iter().zip(&pif) {
            pi_error = pi_error.max((a - b).abs());
            pi_scale = pi_scale.max(a.abs());
        }
        let mut b = Vec::with_capacity(n.get());
        for i in 1..=n.get() {
            let c = bulk_correction(u, k, r, i, &quad)?;
            pi_error = pi_error.max(c.error);
            b.push(c.value);
        }
        p_values.push(p);
        pi_values.push(pi);
        bulk.push(b);
    }
    p_error = p_error.max(4.0 * f64::EPSILON * p_scale);
    pi_error = pi_error.max(4.0 * f64::EPSILON * pi_scale);

    let (kk, f) = (settings.plateau_len, settings.spread_factor);
    let p_invariant = extract_invariant(&p_values, p_error, kk, f);
    let mut pi_invariant = Some(Vec::with_capacity(n.get()));
    for i in 0..n.get() {
        let corrected: Vec<f64> = pi_values.iter().zip(&bulk).map(|(p, b)| p[i] - b[i]).collect();
        match (extract_invariant(&corrected, pi_error, kk, f), pi_invariant.as_mut()) {
            (Some(v), Some(acc)) => acc.push(v),
            _ => pi_invariant = None,
        }
    }
    Ok(PohozaevReport {
        n: n.get(),
        radii: radii.to_vec(),
        p_values,
        pi_values,
        bulk,
        p_invariant,
        pi_invariant,
        p_error,
        pi_error,
        quad_error: p_error.max(pi_error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_detection() {
        assert_eq!(extract_invariant(&[2.0; 6], 1e-12, 4, 10.0), Some(2.0));
        assert_eq!(extract_invariant(&[2.0; 3], 1e-12, 4, 10.0), None);
        let osc: Vec<f64> = (0..12).map(|j| (j as f64).sin()).collect();
        assert_eq!(extract_invariant(&osc, 1e-6, 4, 10.0), None);
        let conv = [1.0, 0.5, 0.1 + 1e-9, 0.1, 0.1 - 1e-9, 0.1];
        let v = extract_invariant(&conv, 1e-9, 4, 10.0).unwrap();
        assert!((v - 0.1).abs() < 1e-9);
    }
}
