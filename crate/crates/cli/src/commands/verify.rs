//! The identity suite behind `verify`.
//!
//! Every check reports a relative error (or absolute, for quantities that
//! vanish) together with its tolerance. Sampling is seeded, one stream per
//! check, so adding a check never perturbs the others.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Map;
use yamabe_core::field::pde_residual;
use yamabe_core::numerics::{sphere_area, vector, QuadratureRule};
use yamabe_core::pohozaev::{pohozaev_report, CurvatureFunction, PohozaevSettings};
use yamabe_core::solutions::{
    constant_value, integrate_delaunay, neck_to_energy, period, spherical_mass, SphericalSolution,
};
use yamabe_core::transforms::{
    deform_delaunay, kelvin_spherical_params, reflect, to_cylinder, KelvinField, KelvinParams, Orientation,
};
use yamabe_core::{Dimension, Field, Result};

use super::Ctx;
use crate::table::ResultTable;
use crate::CliError;

pub const DEFAULTS: &[(&str, f64)] = &[
    ("drift", 1e-8),
    ("integrator", 1e-10),
    ("involution", 1e-12),
    ("mass", 1e-6),
    ("mass_invariance", 1e-8),
    ("period", 1e-6),
    ("pohozaev", 1e-4),
    ("residual", 1e-5),
    ("transforms", 1e-10),
    ("two_forms", 1e-12),
];

const DRAWS: usize = 20;
const SAMPLES: usize = 1000;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn stream(seed: u64, k: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k);
    r
}

fn direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = vector::norm(&p);
        if r > 1e-3 && r <= 1.0 {
            return vector::scale(&p, 1.0 / r);
        }
    }
}

/// A bubble with random scale and a centre of length `c` along a random axis.
fn random_bubble(rng: &mut ChaCha8Rng, n: Dimension) -> Result<SphericalSolution> {
    let lambda = rng.gen_range(0.2..3.0);
    let c = rng.gen_range(0.05..2.0);
    SphericalSolution::new(n, lambda, vector::scale(&direction(rng, n.get()), c))
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    vector::scale(&direction(rng, n), 10f64.powf(rng.gen_range(-1.5..1.5)))
}

/// Neck sizes scaled so that n = 3 uses the reference values exactly.
fn necks(n: Dimension, base: &[f64]) -> Vec<f64> {
    let ratio = constant_value(n) / constant_value(Dimension::new(3).expect("3 is valid"));
    base.iter().map(|e| e * ratio).collect()
}

fn mass(n: Dimension) -> Result<f64> {
    let exact = sphere_area(n.get())? / 2f64.powi(n.get() as i32);
    let m = spherical_mass(&SphericalSolution::standard(n), &QuadratureRule::gauss_legendre(64)?)?;
    Ok((m.value - exact).abs())
}

fn mass_invariance(n: Dimension, rng: &mut ChaCha8Rng) -> Result<f64> {
    let quad = QuadratureRule::gauss_legendre(64)?;
    let m0 = spherical_mass(&SphericalSolution::standard(n), &quad)?.value;
    let mut worst: f64 = 0.0;
    for _ in 0..DRAWS {
        let m = spherical_mass(&random_bubble(rng, n)?, &quad)?.value;
        worst = worst.max((m - m0).abs());
    }
    Ok(worst)
}

fn residual(n: Dimension, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let u = random_bubble(rng, n)?;
        let x = vector::axpy(u.xi(), rng.gen_range(0.0..2.0), &direction(rng, n.get()));
        worst = worst.max(pde_residual(&u, n.sphere_curvature(), &x, 1e-3)?.abs());
    }
    Ok(worst)
}

/// Equal ratio `ξ/λ` means the cylindrical images differ by a shift.
fn shift(n: Dimension, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..DRAWS {
        let u1 = random_bubble(rng, n)?;
        let l2 = rng.gen_range(0.2..3.0);
        let ratio = l2 / u1.lambda();
        let u2 = SphericalSolution::new(n, l2, vector::scale(u1.xi(), ratio))?;
        let v1 = to_cylinder(Arc::new(u1), Orientation::Outward)?;
        let v2 = to_cylinder(Arc::new(u2), Orientation::Outward)?;
        for _ in 0..SAMPLES {
            let (s, phi) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.0..PI));
            worst = worst.max(rel(v1.value(s, phi)?, v2.value(s + ratio.ln(), phi)?));
        }
    }
    Ok(worst)
}

fn kelvin_params(n: Dimension, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..DRAWS {
        let u = random_bubble(rng, n)?;
        let a = rng.gen_range(0.3..3.0);
        let (lt, xt) = kelvin_spherical_params(n, u.lambda(), u.xi(), a)?;
        let image = SphericalSolution::new(n, lt, xt)?;
        let ku = KelvinField::new(u, KelvinParams::new(a)?);
        for _ in 0..SAMPLES {
            let x = random_point(rng, n.get());
            worst = worst.max(rel(ku.value(&x)?, image.value(&x)?));
        }
    }
    Ok(worst)
}

/// Reflection across `s₀` against the Kelvin transform about `e^{s₀}` and
/// against the explicit translate.
fn reflection(n: Dimension, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let (mut kelvin_err, mut shift_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..DRAWS {
        let u = random_bubble(rng, n)?;
        let s0 = rng.gen_range(-1.5..1.5);
        let st = (u.lambda().powi(2) + vector::norm_sq(u.xi())).ln() - 2.0 * s0;
        let u: Arc<dyn Field> = Arc::new(u);
        let v = to_cylinder(u.clone(), Orientation::Outward)?;
        let r = reflect(&v, s0);
        let ku: Arc<dyn Field> = Arc::new(KelvinField::new(u, KelvinParams::new(s0.exp())?));
        let vk = to_cylinder(ku, Orientation::Outward)?;
        for _ in 0..SAMPLES {
            let (s, phi) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.0..PI));
            let got = r.value(s, phi)?;
            kelvin_err = kelvin_err.max(rel(got, vk.value(s, phi)?));
            shift_err = shift_err.max(rel(got, v.value(s + st, phi)?));
        }
    }
    Ok((kelvin_err, shift_err))
}

fn involution(n: Dimension, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..DRAWS {
        let u = random_bubble(rng, n)?;
        let p = KelvinParams::new(rng.gen_range(0.3..3.0))?;
        let kk = KelvinField::new(KelvinField::new(u.clone(), p), p);
        for _ in 0..SAMPLES {
            let x = random_point(rng, n.get());
            worst = worst.max(rel(kk.value(&x)?, u.value(&x)?));
        }
    }
    Ok(worst)
}

/// Worst energy drift and worst period disagreement over the neck sizes.
fn delaunay(n: Dimension, tol: f64) -> Result<(f64, f64)> {
    let (mut drift, mut per): (f64, f64) = (0.0, 0.0);
    for eps in necks(n, &[0.1, 0.2, 0.3]) {
        let p = integrate_delaunay(n, eps, 10, tol)?;
        drift = drift.max(p.drift);
        per = per.max(rel(p.measured_period, period(n, eps)?));
    }
    Ok((drift, per))
}

/// Extracted radial invariant against `½ω_{n-1}H(ε)`, with `H` written out.
fn pohozaev(n: Dimension, tol: f64) -> Result<f64> {
    let eps = necks(n, &[0.2])[0];
    let base = Arc::new(integrate_delaunay(n, eps, 2, tol)?);
    let u = deform_delaunay(base, vec![0.0; n.get()], 0.0)?;
    let spheres: Vec<f64> = (2..=12).map(|j| 0.5f64.powi(j)).collect();
    let rep = pohozaev_report(&u, &CurvatureFunction::standard(n), &spheres, &PohozaevSettings::default())?;
    let a = n.conformal_weight();
    let h = -a * a * eps * eps + (n.as_f64() - 2.0).powi(2) * eps.powf(n.mass_exponent());
    let want = 0.5 * sphere_area(n.get() - 1)? * h;
    Ok(rep.p_invariant.map_or(f64::INFINITY, |p| rel(p, want)))
}

fn two_forms(n: Dimension) -> Result<f64> {
    let w = sphere_area(n.get() - 1)?;
    let mut worst: f64 = 0.0;
    for t in [0.05, 0.2, 0.4, 0.6, 0.8, 0.95] {
        let eps = t * constant_value(n);
        let first = (n.as_f64() - 2.0).powi(2) / 8.0 * w * (4.0 * eps.powf(n.mass_exponent()) - eps * eps);
        let second = 0.5 * w * neck_to_energy(n, eps)?;
        worst = worst.max(rel(first, second));
    }
    Ok(worst)
}

/// The table, its parameters, and the first violated identity if any.
pub type Verified = (ResultTable, Map<String, serde_json::Value>, Option<String>);

pub fn verify(ctx: &Ctx) -> std::result::Result<Verified, CliError> {
    let n = ctx.n;
    let seed = ctx.seed;
    let tol = |k: &str| ctx.tol.get(k);
    let (reflect_kelvin, reflect_shift) = reflection(n, &mut stream(seed, 4))?;
    let (drift, per) = delaunay(n, tol("integrator"))?;
    let checks: Vec<(&str, f64, f64)> = vec![
        ("mass", mass(n)?, tol("mass")),
        ("mass_invariance", mass_invariance(n, &mut stream(seed, 1))?, tol("mass_invariance")),
        ("pde_residual", residual(n, &mut stream(seed, 2))?, tol("residual")),
        ("cylinder_shift", shift(n, &mut stream(seed, 3))?, tol("transforms")),
        ("kelvin_parameters", kelvin_params(n, &mut stream(seed, 5))?, tol("transforms")),
        ("reflection_kelvin", reflect_kelvin, tol("transforms")),
        ("reflection_shift", reflect_shift, tol("transforms")),
        ("kelvin_involution", involution(n, &mut stream(seed, 6))?, tol("involution")),
        ("hamiltonian_drift", drift, tol("drift")),
        ("period_agreement", per, tol("period")),
        ("radial_invariant", pohozaev(n, tol("integrator"))?, tol("pohozaev")),
        ("invariant_forms", two_forms(n)?, tol("two_forms")),
    ];
    let failure = checks
        .iter()
        .find(|(_, m, t)| !(m <= t))
        .map(|(name, m, t)| format!("identity {name} violated: measured {m:e} exceeds tolerance {t:e}"));
    let mut table = ResultTable::new();
    table
        .text("check", checks.iter().map(|c| c.0.to_string()).collect())
        .real("measured", checks.iter().map(|c| c.1).collect())
        .real("tolerance", checks.iter().map(|c| c.2).collect())
        .real("pass", checks.iter().map(|c| (c.1 <= c.2) as u8 as f64).collect());
    table.meta("passed", failure.is_none());
    let mut params = Map::new();
    params.insert("draws".into(), DRAWS.into());
    params.insert("samples".into(), SAMPLES.into());
    Ok((table, params, failure))
}
