//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "yamabe", version, about = "Solution families of Δu + K u^{(n+2)/(n-2)} = 0: tables and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Space dimension, at least 3.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed of every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Args)]
pub struct BubbleArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,

    /// Center `x1,..,xn`; the origin when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xi: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct DeformArgs {
    /// Neck size.
    #[arg(long, default_value = "0.2")]
    pub eps: Sweep,

    /// Deformation vector `x1,..,xn`; zero when absent.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xi: Option<Vec<f64>>,

    /// Shift `T` along the cylinder.
    #[arg(long = "T", default_value_t = 0.0, allow_negative_numbers = true)]
    pub shift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `u_{λ,ξ}`.
    Spherical,
    /// `|x|^{-(n-2)/2} v₀(−ln|x|)`, the standard bubble.
    Cylinder,
    /// `|x|^{-(n-2)/2} v_ε(−ln|x|)`.
    Delaunay,
    /// Kelvin image of the deformed solution, singular at infinity.
    Deformed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mass of a spherical solution against ω_n/2ⁿ.
    Spherical(BubbleArgs),

    /// Kelvin image of a spherical solution and its parameter formula.
    Kelvin {
        #[command(flatten)]
        bubble: BubbleArgs,
        /// Radius of the inversion sphere.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },

    /// Cylinder solution and the standard bubble it induces.
    Cylinder {
        #[arg(long, default_value = "1e-3:1e3:log:61")]
        radii: Sweep,
    },

    /// Integrates one Delaunay-Fowler profile and checks energy and period.
    Delaunay {
        #[arg(long, default_value = "0.2")]
        eps: Sweep,
        #[arg(long, default_value_t = 10)]
        periods: usize,
    },

    /// Energy and period over a sweep of neck sizes.
    PeriodMap {
        /// `lo:hi:kind:count` with kind `geometric` or `linear`, or one value.
        #[arg(long)]
        eps: Sweep,
    },

    /// Deformed Delaunay-Fowler solution sampled along its axis.
    Deform {
        #[command(flatten)]
        deform: DeformArgs,
        #[arg(long, default_value = "1e-3:1e1:log:41")]
        radii: Sweep,
    },

    /// Radial and translational Pohozaev integrals of a deformed solution.
    ///
    /// Row `r` holds the integrals over the sphere of radius `1/r` about the
    /// singular point at the origin; the last row (`r = inf`) holds the
    /// extracted invariants.
    Pohozaev {
        #[command(flatten)]
        deform: DeformArgs,
        #[arg(long, default_value = "4:4096:log:11")]
        radii: Sweep,
    },

    /// Decay class, Harnack quotients and gradient constant of a family.
    Classify {
        #[arg(long, value_enum, default_value_t = Family::Delaunay)]
        family: Family,
        #[command(flatten)]
        deform: DeformArgs,
        /// Scale of the spherical family; `--xi` is its center.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value = "1:1e40:log:401")]
        radii: Sweep,
    },

    /// Blow-up rescaling near the puncture at cutoff `eps`.
    Rescale {
        #[arg(long, value_enum, default_value_t = Family::Delaunay)]
        family: Family,
        #[command(flatten)]
        bubble: BubbleArgs,
        /// Cutoff, and the neck size of the Delaunay family.
        #[arg(long, default_value = "0.05")]
        eps: Sweep,
    },

    /// Runs the identity suite; exits 1 on the first violated identity.
    Verify,
}

/// A single value or `lo:hi:kind:count`.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Value(f64),
    Range { lo: f64, hi: f64, geometric: bool, count: usize },
}

impl std::str::FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
        match parts.as_slice() {
            [v] => Ok(Sweep::Value(num(v)?)),
            [lo, hi, kind, count] => {
                let geometric = match kind.trim() {
                    "geometric" | "log" => true,
                    "linear" | "lin" => false,
                    k => return Err(format!("unknown spacing {k:?}; use geometric or linear")),
                };
                let count = count.trim().parse::<usize>().map_err(|e| format!("bad count {count:?}: {e}"))?;
                let (lo, hi) = (num(lo)?, num(hi)?);
                // descending ranges are allowed; grids reject them later
                if count == 0 || !lo.is_finite() || !hi.is_finite() || (count > 1 && lo == hi) {
                    return Err(format!("range needs distinct finite ends and a positive count, got {s:?}"));
                }
                if geometric && !(lo > 0.0 && hi > 0.0) {
                    return Err(format!("geometric range needs positive ends, got {s:?}"));
                }
                Ok(Sweep::Range { lo, hi, geometric, count })
            }
            _ => Err(format!("expected a number or lo:hi:kind:count, got {s:?}")),
        }
    }
}

impl std::fmt::Display for Sweep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sweep::Value(v) => write!(f, "{v}"),
            Sweep::Range { lo, hi, geometric, count } => {
                write!(f, "{lo}:{hi}:{}:{count}", if *geometric { "geometric" } else { "linear" })
            }
        }
    }
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Sweep::Value(v) => vec![v],
            Sweep::Range { lo, count: 1, .. } => vec![lo],
            Sweep::Range { lo, hi, geometric, count } => {
                let last = (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        let f = i as f64 / last;
                        if i == count - 1 {
                            hi
                        } else if geometric {
                            lo * (hi / lo).powf(f)
                        } else {
                            lo + (hi - lo) * f
                        }
                    })
                    .collect()
            }
        }
    }
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = value.trim().parse().map_err(|e| format!("bad tolerance {value:?}: {e}"))?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(format!("tolerance {name} must be positive, got {v}"));
    }
    Ok((name.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweeps() {
        assert_eq!("0.2".parse::<Sweep>().unwrap(), Sweep::Value(0.2));
        let s: Sweep = "0.025:0.4:geometric:9".parse().unwrap();
        let v = s.values();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], 0.025);
        assert_eq!(v[8], 0.4);
        assert!((v[4] - 0.1).abs() < 1e-15);
        assert_eq!("0:1:linear:3".parse::<Sweep>().unwrap().values(), vec![0.0, 0.5, 1.0]);
        assert!("0:1:geometric:3".parse::<Sweep>().is_err());
        assert!("1:1:linear:3".parse::<Sweep>().is_err());
        let down: Sweep = "0.2:0.025:geometric:4".parse().unwrap();
        assert_eq!(down.values(), vec![0.2, 0.1, 0.05, 0.025]);
        assert_eq!(down.to_string(), "0.2:0.025:geometric:4");
        assert!("1:2:cubic:3".parse::<Sweep>().is_err());
        assert!("1:2".parse::<Sweep>().is_err());
    }

    #[test]
    fn tolerances() {
        assert_eq!(parse_tol("integrator=1e-12").unwrap(), ("integrator".into(), 1e-12));
        assert!(parse_tol("integrator=-1").is_err());
        assert!(parse_tol("integrator").is_err());
    }

    #[test]
    fn grammar_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
