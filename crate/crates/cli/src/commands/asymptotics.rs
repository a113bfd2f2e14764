use std::sync::Arc;

use serde_json::Value;
use yamabe_core::asymptotics::{blowup_rescale, classify_decay, DecaySettings, RescaleSettings};
use yamabe_core::solutions::{integrate_delaunay, CylinderSolution, Profile, SphericalSolution};
use yamabe_core::transforms::{from_cylinder, CylindricalField, Orientation};
use yamabe_core::Field;

use super::families::deformed;
use super::{grid, json_vec, scalar, vector_arg, Built, Ctx};
use crate::args::{BubbleArgs, DeformArgs, Family, Sweep};
use crate::table::{real_json, ResultTable};
use crate::CliError;

fn induced(profile: Arc<dyn Profile>) -> Arc<dyn Field> {
    Arc::new(from_cylinder(CylindricalField::from_profile(profile, Orientation::Inward)))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Spherical => "spherical",
        Family::Cylinder => "cylinder",
        Family::Delaunay => "delaunay",
        Family::Deformed => "deformed",
    }
}

pub fn classify(ctx: &Ctx, family: Family, d: &DeformArgs, lambda: f64, radii: &Sweep) -> Result<Built, CliError> {
    let g = grid(radii)?;
    let mut params = serde_json::Map::new();
    params.insert("family".into(), family_name(family).into());
    params.insert("radii".into(), radii.to_string().into());
    let u: Arc<dyn Field> = match family {
        Family::Spherical => {
            let xi = vector_arg(&d.xi, ctx.n, "xi")?;
            params.insert("lambda".into(), lambda.into());
            params.insert("xi".into(), json_vec(&xi));
            Arc::new(SphericalSolution::new(ctx.n, lambda, xi)?)
        }
        Family::Cylinder => induced(Arc::new(CylinderSolution::new(ctx.n))),
        Family::Delaunay => {
            let eps = scalar(&d.eps, "eps")?;
            params.insert("eps".into(), eps.into());
            induced(Arc::new(integrate_delaunay(ctx.n, eps, 2, ctx.tol.get("integrator"))?))
        }
        Family::Deformed => {
            let (u, _, p) = deformed(ctx, d)?;
            params.extend(p);
            Arc::new(u)
        }
    };
    let settings = DecaySettings { tolerance: ctx.tol.get("decay"), seed: ctx.seed, ..DecaySettings::default() };
    let rep = classify_decay(&*u, &g, &settings)?;
    let mut t = ResultTable::new();
    t.real("r", rep.radii.clone())
        .real("sup", rep.sup.clone())
        .real("inf", rep.inf.clone())
        .real("harnack", rep.harnack.clone());
    t.meta("classification", rep.classification.as_str())
        .meta("fitted_exponent", real_json(rep.fitted_exponent))
        .meta("lower_exponent", real_json(rep.lower_exponent))
        .meta("gradient_constant", real_json(rep.gradient_const))
        .meta("lower_bound_holds", rep.lower_ok);
    eprintln!("classification: {} (exponent {:.6})", rep.classification.as_str(), rep.fitted_exponent);
    Ok((t, params))
}

pub fn rescale(ctx: &Ctx, family: Family, b: &BubbleArgs, eps: &Sweep) -> Result<Built, CliError> {
    let values = eps.values();
    let mut params = serde_json::Map::new();
    params.insert("family".into(), family_name(family).into());
    params.insert("eps".into(), eps.to_string().into());
    let xi = vector_arg(&b.xi, ctx.n, "xi")?;
    if family == Family::Spherical {
        params.insert("lambda".into(), b.lambda.into());
        params.insert("xi".into(), json_vec(&xi));
    }
    let settings = RescaleSettings { seed: ctx.seed, ..RescaleSettings::default() };
    let cols = ["eps", "m_eps", "mu", "guaranteed_radius", "sup_deviation", "degenerate", "puncture_inside"];
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); cols.len()];
    for &e in &values {
        // for Delaunay-induced fields the neck size doubles as the cutoff
        let w: Arc<dyn Field> = match family {
            Family::Spherical => Arc::new(SphericalSolution::new(ctx.n, b.lambda, xi.clone())?),
            Family::Cylinder => induced(Arc::new(CylinderSolution::new(ctx.n))),
            Family::Delaunay => induced(Arc::new(integrate_delaunay(ctx.n, e, 2, ctx.tol.get("integrator"))?)),
            Family::Deformed => {
                return Err(CliError::Usage("rescale supports spherical, cylinder and delaunay".into()))
            }
        };
        let rep = blowup_rescale(&*w, e, &settings)?;
        let row = [
            e,
            rep.m_eps,
            rep.mu,
            rep.guaranteed_radius,
            rep.sup_deviation,
            rep.degenerate as u8 as f64,
            rep.puncture_inside as u8 as f64,
        ];
        for (c, v) in data.iter_mut().zip(row) {
            c.push(v);
        }
        if rep.degenerate {
            eprintln!(
                "eps {e}: rescaled ball of radius {:.3} does not cover B({})",
                rep.guaranteed_radius, settings.radius
            );
        }
    }
    let monotone = data[4].windows(2).all(|w| w[1] <= w[0]);
    let mut t = ResultTable::new();
    for (name, col) in cols.iter().zip(data) {
        t.real(name, col);
    }
    t.meta("radius", settings.radius).meta("deviation_monotone", Value::Bool(monotone));
    Ok((t, params))
}
