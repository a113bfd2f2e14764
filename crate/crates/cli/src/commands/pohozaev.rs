use serde_json::Value;
use yamabe_core::numerics::sphere_area;
use yamabe_core::pohozaev::{pohozaev_report, CurvatureFunction, PohozaevSettings};

use super::families::deformed;
use super::{grid, json_vec, Built, Ctx};
use crate::args::{DeformArgs, Sweep};
use crate::table::{real_json, ResultTable};
use crate::CliError;

pub fn pohozaev(ctx: &Ctx, d: &DeformArgs, radii: &Sweep) -> Result<Built, CliError> {
    let g = grid(radii)?;
    let (u, base, mut params) = deformed(ctx, d)?;
    params.insert("radii".into(), radii.to_string().into());
    let settings = PohozaevSettings {
        spread_factor: ctx.tol.get("plateau_spread"),
        field_accuracy: ctx.tol.get("integrator"),
        ..PohozaevSettings::default()
    };
    // spheres of radius s = 1/r about the singular point, approached as r grows
    let spheres: Vec<f64> = g.radii().iter().map(|r| 1.0 / r).collect();
    let rep = pohozaev_report(&u, &CurvatureFunction::standard(ctx.n), &spheres, &settings)?;
    let nn = ctx.n.get();

    let mut r = g.radii().to_vec();
    r.push(f64::INFINITY);
    let mut p = rep.p_values.clone();
    p.push(rep.p_invariant.unwrap_or(f64::NAN));
    let mut t = ResultTable::new();
    t.real("r", r).real("P", p);
    for i in 0..nn {
        let mut col: Vec<f64> = rep.pi_values.iter().map(|v| v[i]).collect();
        col.push(rep.pi_invariant.as_ref().map_or(f64::NAN, |v| v[i]));
        t.real(&format!("P_{}", i + 1), col);
    }
    let closed = 0.5 * sphere_area(nn - 1)? * base.energy;
    t.meta("H", base.energy)
        .meta("radial_closed_form", closed)
        .meta("p_invariant", rep.p_invariant.map_or(Value::Null, real_json))
        .meta("pi_invariant", rep.pi_invariant.as_deref().map_or(Value::Null, json_vec))
        .meta("p_error", real_json(rep.p_error))
        .meta("pi_error", real_json(rep.pi_error));
    Ok((t, params))
}
