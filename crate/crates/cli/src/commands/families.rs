use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};
use yamabe_core::numerics::{sphere_area, vector, QuadratureRule};
use yamabe_core::solutions::*;
use yamabe_core::transforms::*;
use yamabe_core::Field;

use super::{grid, json_vec, scalar, vector_arg, Built, Ctx};
use crate::args::{BubbleArgs, DeformArgs, Sweep};
use crate::table::ResultTable;
use crate::CliError;

fn bubble(ctx: &Ctx, b: &BubbleArgs) -> Result<(SphericalSolution, Map<String, Value>), CliError> {
    let xi = vector_arg(&b.xi, ctx.n, "xi")?;
    let mut p = Map::new();
    p.insert("lambda".into(), b.lambda.into());
    p.insert("xi".into(), json_vec(&xi));
    Ok((SphericalSolution::new(ctx.n, b.lambda, xi)?, p))
}

pub fn spherical(ctx: &Ctx, b: &BubbleArgs) -> Result<Built, CliError> {
    let (u, params) = bubble(ctx, b)?;
    let quad = QuadratureRule::gauss_legendre(64)?;
    let m = spherical_mass(&u, &quad)?;
    let exact = sphere_area(ctx.n.get())? / 2f64.powi(ctx.n.get() as i32);
    let mut t = ResultTable::new();
    t.real("lambda", vec![u.lambda()])
        .real("xi_norm", vec![vector::norm(u.xi())])
        .real("peak", vec![u.peak_value()])
        .real("mass", vec![m.value])
        .real("mass_error", vec![m.error])
        .real("exact", vec![exact])
        .real("difference", vec![m.value - exact]);
    let failure = (m.value - exact).abs() > ctx.tol.get("mass");
    t.meta("mass_within_tolerance", !failure);
    Ok((t, params))
}

pub fn kelvin(ctx: &Ctx, b: &BubbleArgs, a: f64) -> Result<Built, CliError> {
    let (u, mut params) = bubble(ctx, b)?;
    params.insert("a".into(), a.into());
    let (lt, xt) = kelvin_spherical_params(ctx.n, u.lambda(), u.xi(), a)?;
    let image = SphericalSolution::new(ctx.n, lt, xt.clone())?;
    let ku = KelvinField::new(u.clone(), KelvinParams::new(a)?);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let dir = loop {
            let p: Vec<f64> = (0..ctx.n.get()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if let Some(d) = vector::normalized(&p) {
                break d;
            }
        };
        let x = vector::scale(&dir, 10f64.powf(rng.gen_range(-1.0..1.0)));
        let (got, want) = (ku.value(&x)?, image.value(&x)?);
        worst = worst.max(((got - want) / want).abs());
    }
    let mut t = ResultTable::new();
    t.real("lambda_tilde", vec![lt]);
    for (i, c) in xt.iter().enumerate() {
        t.real(&format!("xi_tilde_{}", i + 1), vec![*c]);
    }
    t.real("max_rel_error", vec![worst]);
    t.meta("samples", 1000);
    Ok((t, params))
}

pub fn cylinder(ctx: &Ctx, radii: &Sweep) -> Result<Built, CliError> {
    let g = grid(radii)?;
    let c: Arc<dyn Profile> = Arc::new(CylinderSolution::new(ctx.n));
    let w = from_cylinder(CylindricalField::from_profile(c.clone(), Orientation::Inward));
    let std = SphericalSolution::standard(ctx.n);
    let (mut t_col, mut v, mut u, mut b) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &r in g.radii() {
        let x = vector::scale(&vector::unit(ctx.n.get(), 0), r);
        t_col.push(-r.ln());
        v.push(c.value(-r.ln()));
        u.push(w.value(&x)?);
        b.push(std.value(&x)?);
    }
    let mut t = ResultTable::new();
    t.real("r", g.radii().to_vec()).real("t", t_col).real("v", v).real("u", u).real("bubble", b);
    let mut p = Map::new();
    p.insert("radii".into(), radii.to_string().into());
    Ok((t, p))
}

pub fn delaunay(ctx: &Ctx, eps: &Sweep, periods: usize) -> Result<Built, CliError> {
    let eps = scalar(eps, "eps")?;
    let tol = ctx.tol.get("integrator");
    let p = integrate_delaunay(ctx.n, eps, periods, tol)?;
    let mut t = ResultTable::new();
    t.real("eps", vec![eps])
        .real("H", vec![p.energy])
        .real("v_max", vec![p.v_max])
        .real("T_quadrature", vec![p.period])
        .real("T_measured", vec![p.measured_period])
        .real("period_rel_diff", vec![((p.measured_period - p.period) / p.period).abs()])
        .real("min_value", vec![p.min_value])
        .real("drift", vec![p.drift]);
    let mut params = Map::new();
    params.insert("eps".into(), eps.into());
    params.insert("periods".into(), periods.into());
    Ok((t, params))
}

pub fn period_map(ctx: &Ctx, eps: &Sweep) -> Result<Built, CliError> {
    let values = eps.values();
    let (mut h, mut tp) = (Vec::new(), Vec::new());
    for &e in &values {
        h.push(neck_to_energy(ctx.n, e)?);
        tp.push(period(ctx.n, e)?);
    }
    let mut t = ResultTable::new();
    t.real("eps", values.clone()).real("H", h).real("T", tp);
    t.meta("constant_solution", constant_value(ctx.n));
    t.meta("critical_energy", critical_energy(ctx.n));
    let mut p = Map::new();
    p.insert("eps".into(), eps.to_string().into());
    Ok((t, p))
}

pub(crate) type Deformed = (DeformedDelaunay, Arc<DelaunayProfile>, Map<String, Value>);

/// Builds `u_{ε,ξ,T}` and its reproducing parameters.
pub(crate) fn deformed(ctx: &Ctx, d: &DeformArgs) -> Result<Deformed, CliError> {
    let eps = scalar(&d.eps, "eps")?;
    let xi = vector_arg(&d.xi, ctx.n, "xi")?;
    let base = Arc::new(integrate_delaunay(ctx.n, eps, 2, ctx.tol.get("integrator"))?);
    let u = deform_delaunay(base.clone(), xi.clone(), d.shift)?;
    let mut p = Map::new();
    p.insert("eps".into(), eps.into());
    p.insert("xi".into(), json_vec(&xi));
    p.insert("T".into(), d.shift.into());
    Ok((u, base, p))
}

pub fn deform(ctx: &Ctx, d: &DeformArgs, radii: &Sweep) -> Result<Built, CliError> {
    let g = grid(radii)?;
    let (u, base, mut params) = deformed(ctx, d)?;
    params.insert("radii".into(), radii.to_string().into());
    let nn = ctx.n.get();
    let axis = vector::normalized(u.xi()).unwrap_or_else(|| vector::unit(nn, 0));
    let perp = vector::orthogonal_unit(&axis);
    // the singular point is a legitimate sample; it is written as NaN
    let sample = |x: Vec<f64>| u.value(&x).unwrap_or(f64::NAN);
    let (mut plus, mut minus, mut side) = (Vec::new(), Vec::new(), Vec::new());
    for &r in g.radii() {
        plus.push(sample(vector::scale(&axis, r)));
        minus.push(sample(vector::scale(&axis, -r)));
        side.push(sample(vector::scale(&perp, r)));
    }
    let mut t = ResultTable::new();
    t.real("r", g.radii().to_vec()).real("u_axis_plus", plus).real("u_axis_minus", minus).real("u_perp", side);
    t.meta("H", base.energy);
    if let Some(s) = u.singular_point() {
        t.meta("singular_point", json_vec(&s));
    }
    Ok((t, params))
}
