use crate::error::{Error, Result};
use crate::field::Field;
use crate::numerics::{least_squares_slope, vector, RadialGrid};

use super::sampling::SphereSampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    /// `u ≲ |x|^{-(n-2)}`.
    Fast,
    /// `u ≲ |x|^{-(n-2)/2}`.
    Slow,
    /// Slow decay with the matching lower bound `u ≳ |x|^{-(n-2)/2}`.
    SlowWithLowerBound,
    Unclassified,
}

impl DecayClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DecayClass::Fast => "fast",
            DecayClass::Slow => "slow",
            DecayClass::SlowWithLowerBound => "slow-with-lower-bound",
            DecayClass::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySettings {
    /// Points per sphere for axisymmetric and general fields.
    pub samples: usize,
    /// Allowed distance of a fitted exponent from `-(n-2)` or `-(n-2)/2`.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for DecaySettings {
    fn default() -> Self {
        DecaySettings { samples: 33, tolerance: 0.05, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub radii: Vec<f64>,
    pub sup: Vec<f64>,
    pub inf: Vec<f64>,
    /// Slope of `ln sup_{S_r} u` against `ln r` on the outer half of the grid.
    pub fitted_exponent: f64,
    /// Same for `ln inf_{S_r} u`.
    pub lower_exponent: f64,
    /// `sup/inf` on each sphere.
    pub harnack: Vec<f64>,
    /// `max |x||∇u|/u` over all samples.
    pub gradient_const: f64,
    /// Whether `u ≥ c|x|^{2-n}` holds beyond the innermost sphere.
    pub lower_ok: bool,
    pub classification: DecayClass,
}

fn sphere_values(u: &dyn Field, sampler: &SphereSampler, r: f64) -> Result<Vec<f64>> {
    let origin = vec![0.0; u.dim().get()];
    sampler
        .points(&origin, r)
        .map(|x| {
            let v = u.value(&x)?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::domain(format!("field must be positive, got {v} at |x| = {r}")))
            }
        })
        .collect()
}

fn extremes(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// `sup_{S_r} u / inf_{S_r} u` over the sample set.
pub fn harnack_quotient(u: &dyn Field, r: f64, settings: &DecaySettings) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let sampler = SphereSampler::new(u.dim().get(), &u.symmetry(), settings.samples, settings.seed);
    let (lo, hi) = extremes(&sphere_values(u, &sampler, r)?);
    Ok(hi / lo)
}

/// `max |x||∇u(x)|/u(x)` over the sample points on every sphere of `radii`.
pub fn gradient_bound(u: &dyn Field, radii: &RadialGrid, settings: &DecaySettings) -> Result<f64> {
    let n = u.dim().get();
    let sampler = SphereSampler::new(n, &u.symmetry(), settings.samples, settings.seed);
    let origin = vec![0.0; n];
    let mut c: f64 = 0.0;
    for &r in radii.radii() {
        for x in sampler.points(&origin, r) {
            let v = u.value(&x)?;
            c = c.max(r * vector::norm(&u.gradient(&x)?) / v);
        }
    }
    Ok(c)
}

/// Checks the conclusion of the superharmonic lower bound: with
/// `c = min_{S_ρ} u · ρ^{n-2}`, whether `u(x) ≥ c|x|^{2-n}` at every sample
/// point on the spheres of `radii` lying outside `S_ρ`.
pub fn lower_bound_check(u: &dyn Field, rho: f64, radii: &RadialGrid, settings: &DecaySettings) -> Result<bool> {
    let n = u.dim();
    let sampler = SphereSampler::new(n.get(), &u.symmetry(), settings.samples, settings.seed);
    let e = n.as_f64() - 2.0;
    let (lo, _) = extremes(&sphere_values(u, &sampler, rho)?);
    let c = lo * rho.powf(e);
    for &r in radii.radii().iter().filter(|&&r| r > rho) {
        let (lo, _) = extremes(&sphere_values(u, &sampler, r)?);
        // relative slack for rounding in the comparison only
        if lo < c * r.powf(-e) * (1.0 - 1e-12) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fits the tail exponent of `u` and classifies its decay.
///
/// The exponent is the least-squares slope of `ln sup_{S_r} u` against `ln r`
/// over the outer half of `radii`, assigned to fast or slow decay when it
/// lies within `tolerance` of `-(n-2)` or `-(n-2)/2`. Slow decay is upgraded
/// when the slope of `ln inf_{S_r} u` also lies within `tolerance` of
/// `-(n-2)/2`. A field that violates the superharmonic lower bound is left
/// unclassified.
pub fn classify_decay(u: &dyn Field, radii: &RadialGrid, settings: &DecaySettings) -> Result<DecayReport> {
    if radii.decades() < 2.0 - 1e-12 {
        return Err(Error::domain(format!("decay fit needs radii spanning two decades, got {:.3}", radii.decades())));
    }
    let n = u.dim();
    let sampler = SphereSampler::new(n.get(), &u.symmetry(), settings.samples, settings.seed);
    let rs = radii.radii();
    let (mut sup, mut inf, mut harnack) = (Vec::new(), Vec::new(), Vec::new());
    for &r in rs {
        let (lo, hi) = extremes(&sphere_values(u, &sampler, r)?);
        sup.push(hi);
        inf.push(lo);
        harnack.push(hi / lo);
    }
    let outer = rs.len() / 2;
    let fit = |vals: &[f64]| {
        let pts: Vec<(f64, f64)> = rs[outer..].iter().zip(&vals[outer..]).map(|(r, v)| (r.ln(), v.ln())).collect();
        least_squares_slope(&pts)
    };
    let fitted_exponent = fit(&sup);
    let lower_exponent = fit(&inf);
    let gradient_const = gradient_bound(u, radii, settings)?;
    let lower_ok = lower_bound_check(u, rs[0], radii, settings)?;

    let fast = -(n.as_f64() - 2.0);
    let slow = fast / 2.0;
    let tol = settings.tolerance;
    let classification = if !lower_ok {
        DecayClass::Unclassified
    } else if (fitted_exponent - fast).abs() <= tol {
        DecayClass::Fast
    } else if (fitted_exponent - slow).abs() <= tol {
        if (lower_exponent - slow).abs() <= tol {
            DecayClass::SlowWithLowerBound
        } else {
            DecayClass::Slow
        }
    } else {
        DecayClass::Unclassified
    };
    Ok(DecayReport {
        radii: rs.to_vec(),
        sup,
        inf,
        fitted_exponent,
        lower_exponent,
        harnack,
        gradient_const,
        lower_ok,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FnField, Symmetry};
    use crate::numerics::Dimension;
    use crate::solutions::SphericalSolution;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn spherical_solutions_decay_fast() {
        for n in 3..=5 {
            let u = SphericalSolution::standard(dim(n));
            let rep = classify_decay(&u, &RadialGrid::log(1.0, 1e4, 41).unwrap(), &DecaySettings::default()).unwrap();
            assert_eq!(rep.classification, DecayClass::Fast, "n = {n}");
            assert!((rep.fitted_exponent + (n as f64 - 2.0)).abs() < 0.05);
            assert!(rep.harnack.iter().all(|&h| h == 1.0));
        }
    }

    #[test]
    fn constant_is_unclassified() {
        let u = FnField::constant(dim(3), 1.0);
        let rep = classify_decay(&u, &RadialGrid::log(1.0, 1e3, 21).unwrap(), &DecaySettings::default()).unwrap();
        assert_eq!(rep.classification, DecayClass::Unclassified);
        assert!(rep.fitted_exponent.abs() < 1e-12);
        assert_eq!(rep.gradient_const, 0.0);
    }

    #[test]
    fn short_grid_is_rejected() {
        let u = FnField::constant(dim(3), 1.0);
        assert!(classify_decay(&u, &RadialGrid::log(1.0, 10.0, 5).unwrap(), &DecaySettings::default()).is_err());
    }

    #[test]
    fn negative_values_are_a_domain_error() {
        let u = FnField::constant(dim(3), -1.0);
        assert!(matches!(harnack_quotient(&u, 1.0, &DecaySettings::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn gradient_constant_of_standard_bubble() {
        // |x||∇u|/u = (n-2)|x|²/(1+|x|²) → n-2
        let u = SphericalSolution::standard(dim(3));
        let c = gradient_bound(&u, &RadialGrid::log(1.0, 1e6, 31).unwrap(), &DecaySettings::default()).unwrap();
        assert!((c - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lower_bound_conclusion() {
        let grid = RadialGrid::log(1.0, 1e3, 21).unwrap();
        let s = DecaySettings::default();
        let u = SphericalSolution::new(dim(3), 0.5, vec![0.2, 0.0, 0.0]).unwrap();
        assert!(lower_bound_check(&u, 1.0, &grid, &s).unwrap());
        let bad = FnField::new(dim(3), Symmetry::Radial, |x| Ok(vector::norm(x).powi(-3)));
        assert!(!lower_bound_check(&bad, 1.0, &grid, &s).unwrap());
    }

    #[test]
    fn off_center_bubble_harnack_tends_to_one() {
        let u = SphericalSolution::new(dim(3), 1.0, vec![0.5, 0.0, 0.0]).unwrap();
        let s = DecaySettings::default();
        let h1 = harnack_quotient(&u, 10.0, &s).unwrap();
        let h2 = harnack_quotient(&u, 1000.0, &s).unwrap();
        assert!(h1 > h2 && h2 > 1.0 && h2 - 1.0 < 2e-3);
    }
}
