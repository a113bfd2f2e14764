use std::collections::BTreeMap;

use serde_json::{Map, Value};
use yamabe_core::numerics::{RadialGrid, Spacing};
use yamabe_core::Dimension;

use crate::args::{Cli, Command, Sweep};
use crate::table::{real_json, ResultTable};
use crate::{CliError, Outcome};

mod asymptotics;
mod families;
mod pohozaev;
pub mod verify;

/// Named positive tolerances with defaults; unknown names are usage errors.
#[derive(Debug, Clone)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Tolerances {
    pub fn new(overrides: &[(String, f64)], defaults: &[(&str, f64)]) -> Result<Self, CliError> {
        let mut map: BTreeMap<String, f64> = defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (name, v) in overrides {
            match map.get_mut(name) {
                Some(slot) => *slot = *v,
                None => {
                    let known: Vec<&str> = defaults.iter().map(|(k, _)| *k).collect();
                    return Err(CliError::Usage(format!(
                        "unknown tolerance {name:?}; this command accepts {}",
                        if known.is_empty() { "none".to_string() } else { known.join(", ") }
                    )));
                }
            }
        }
        Ok(Tolerances(map))
    }

    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.clone(), real_json(*v))).collect())
    }
}

/// Per-run context shared by the subcommands.
pub struct Ctx {
    pub n: Dimension,
    pub seed: u64,
    pub tol: Tolerances,
}

pub(crate) fn scalar(s: &Sweep, flag: &str) -> Result<f64, CliError> {
    match s {
        Sweep::Value(v) => Ok(*v),
        _ => Err(CliError::Usage(format!("--{flag} takes a single value here"))),
    }
}

pub(crate) fn grid(s: &Sweep) -> Result<RadialGrid, CliError> {
    let spacing = match s {
        Sweep::Range { geometric: true, .. } => Spacing::UniformLog,
        Sweep::Range { geometric: false, .. } => Spacing::UniformLinear,
        Sweep::Value(_) => return Err(CliError::Usage("--radii takes lo:hi:kind:count".into())),
    };
    RadialGrid::from_radii(s.values(), spacing).map_err(|e| CliError::Usage(format!("--radii: {e}")))
}

pub(crate) fn vector_arg(xi: &Option<Vec<f64>>, n: Dimension, flag: &str) -> Result<Vec<f64>, CliError> {
    match xi {
        None => Ok(vec![0.0; n.get()]),
        Some(v) if v.len() == n.get() => Ok(v.clone()),
        Some(v) => Err(CliError::Usage(format!("--{flag} has {} components, expected {n}", v.len()))),
    }
}

pub(crate) fn json_vec(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| real_json(x)).collect())
}

fn tolerance_defaults(cmd: &Command) -> &'static [(&'static str, f64)] {
    match cmd {
        Command::Spherical(_) => &[("mass", 1e-8)],
        Command::Kelvin { .. } => &[],
        Command::Cylinder { .. } => &[],
        Command::Delaunay { .. } => &[("integrator", 1e-10)],
        Command::PeriodMap { .. } => &[],
        Command::Deform { .. } => &[("integrator", 1e-10)],
        Command::Pohozaev { .. } => &[("integrator", 1e-10), ("plateau_spread", 10.0)],
        Command::Classify { .. } => &[("integrator", 1e-10), ("decay", 0.05)],
        Command::Rescale { .. } => &[("integrator", 1e-10)],
        Command::Verify => verify::DEFAULTS,
    }
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Spherical(_) => "spherical",
        Command::Kelvin { .. } => "kelvin",
        Command::Cylinder { .. } => "cylinder",
        Command::Delaunay { .. } => "delaunay",
        Command::PeriodMap { .. } => "period-map",
        Command::Deform { .. } => "deform",
        Command::Pohozaev { .. } => "pohozaev",
        Command::Classify { .. } => "classify",
        Command::Rescale { .. } => "rescale",
        Command::Verify => "verify",
    }
}

/// Runs the parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let n = Dimension::new(cli.common.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx =
        Ctx { n, seed: cli.common.seed, tol: Tolerances::new(&cli.common.tol, tolerance_defaults(&cli.command))? };
    let mut failure = None;
    let (mut table, params) = match &cli.command {
        Command::Spherical(b) => families::spherical(&ctx, b)?,
        Command::Kelvin { bubble, a } => families::kelvin(&ctx, bubble, *a)?,
        Command::Cylinder { radii } => families::cylinder(&ctx, radii)?,
        Command::Delaunay { eps, periods } => families::delaunay(&ctx, eps, *periods)?,
        Command::PeriodMap { eps } => families::period_map(&ctx, eps)?,
        Command::Deform { deform, radii } => families::deform(&ctx, deform, radii)?,
        Command::Pohozaev { deform, radii } => pohozaev::pohozaev(&ctx, deform, radii)?,
        Command::Classify { family, deform, lambda, radii } => {
            asymptotics::classify(&ctx, *family, deform, *lambda, radii)?
        }
        Command::Rescale { family, bubble, eps } => asymptotics::rescale(&ctx, *family, bubble, eps)?,
        Command::Verify => {
            let (t, p, f) = verify::verify(&ctx)?;
            failure = f;
            (t, p)
        }
    };
    let mut meta = Map::new();
    meta.insert("command".into(), name(&cli.command).into());
    meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    meta.insert("n".into(), n.get().into());
    meta.insert("seed".into(), ctx.seed.into());
    meta.insert("parameters".into(), Value::Object(params));
    meta.insert("tolerances".into(), ctx.tol.to_json());
    meta.append(&mut table.meta);
    table.meta = meta;
    Ok(Outcome { table, failure })
}

/// Table plus the parameters that reproduce it.
pub(crate) type Built = (ResultTable, Map<String, Value>);
