use crate::error::{Error, Result};
use crate::numerics::ode::{dop853, OdeOptions};
use crate::numerics::{find_root, integrate_adaptive, Dimension};

use super::interp::QuinticHermite;
use super::profiles::Profile;

/// `H(v, v') = v'² − ((n-2)/2)² v² + (n-2)² v^{2n/(n-2)}`.
pub fn hamiltonian(n: Dimension, v: f64, vp: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("hamiltonian needs v > 0, got {v}")));
    }
    let a = n.conformal_weight();
    let m = n.as_f64() - 2.0;
    Ok(vp * vp - a * a * v * v + m * m * v.powf(n.mass_exponent()))
}

/// The constant solution `((n-2)/(4n))^{(n-2)/4}`.
pub fn constant_value(n: Dimension) -> f64 {
    let nf = n.as_f64();
    ((nf - 2.0) / (4.0 * nf)).powf((nf - 2.0) / 4.0)
}

/// `D_n`, the energy of the constant solution and the infimum of the
/// Delaunay-Fowler energies.
///
/// Evaluating `H` at the constant gives
/// `−(1/(2n))(n-2)² ((n-2)/(4n))^{(n-2)/2}`. The expression
/// `−(2/n)(n-2)² ((n-2)/(4n))^{(n-2)/2}` that is sometimes quoted is four
/// times too large and is not reachable by any positive solution.
pub fn critical_energy(n: Dimension) -> f64 {
    let nf = n.as_f64();
    -(nf - 2.0).powi(2) / (2.0 * nf) * ((nf - 2.0) / (4.0 * nf)).powf((nf - 2.0) / 2.0)
}

fn check_neck(n: Dimension, eps: f64) -> Result<()> {
    let top = constant_value(n);
    if !(eps > 0.0 && eps < top) {
        return Err(Error::domain(format!("neck size must lie in (0, {top}) for n = {n}, got {eps}")));
    }
    Ok(())
}

/// Energy of the Delaunay-Fowler solution with minimum `eps`.
pub fn neck_to_energy(n: Dimension, eps: f64) -> Result<f64> {
    check_neck(n, eps)?;
    hamiltonian(n, eps, 0.0)
}

/// Inverse of [`neck_to_energy`] on `(D_n, 0)`.
pub fn energy_to_neck(n: Dimension, h: f64) -> Result<f64> {
    let dn = critical_energy(n);
    if !(h > dn && h < 0.0) {
        return Err(Error::domain(format!("energy must lie in ({dn}, 0), got {h}")));
    }
    let top = constant_value(n);
    // H(ε) decreases strictly on (0, top); work relative to H for small necks.
    let scale = h.abs();
    find_root(
        |e| if e <= 0.0 { -h / scale } else { (hamiltonian(n, e, 0.0).unwrap() - h) / scale },
        0.0,
        top,
        1e-16 * top,
    )
}

/// Largest root of `Q(v) = H + ((n-2)/2)² v² − (n-2)² v^{2n/(n-2)}`, the
/// maximum of the trajectory with energy `h`.
pub fn upper_turning_point(n: Dimension, h: f64) -> Result<f64> {
    let dn = critical_energy(n);
    if !(h > dn && h < 0.0) {
        return Err(Error::domain(format!("energy must lie in ({dn}, 0), got {h}")));
    }
    let a = n.conformal_weight();
    let m = n.as_f64() - 2.0;
    let q = n.mass_exponent();
    let lo = constant_value(n);
    let hi = 4f64.powf(-m / 4.0);
    find_root(|v| h + a * a * v * v - m * m * v.powf(q), lo, hi, 1e-16)
}

/// Period `T_ε` of the Delaunay-Fowler solution with neck size `eps`.
///
/// `T = 2 ∫_ε^{v_max} dv / √Q(v)` with `Q(v) = H + ((n-2)/2)² v² − (n-2)² v^q`.
/// In the scaled offset `x = v/v_c − 1` from the constant solution,
/// `Q = v_c² (n-2)² (g(x_ε) − g(x))` with `g(x) = ((1+x)^q − 1 − qx)/(2q) − x²/4`.
/// The interval is split at its midpoint and each half is substituted as
/// `x = turning point ± s²`; the `s` factors cancel against the divided
/// difference of `g`, so the integrands are smooth and free of cancellation
/// even when the two turning points nearly merge.
pub fn period(n: Dimension, eps: f64) -> Result<f64> {
    check_neck(n, eps)?;
    let q = n.mass_exponent();
    let m = n.as_f64() - 2.0;
    let vc = constant_value(n);
    let x_lo = eps / vc - 1.0;
    let x_cap = 4f64.powf(-m / 4.0) / vc - 1.0;
    // g[x, x_lo] vanishes exactly at the upper turning point.
    let x_hi = find_root(|x| divided_g(q, x, x_lo), 0.0, x_cap, 1e-17)?;
    let mid = 0.5 * (x_lo + x_hi);

    let tol = 1e-13;
    let (lower, _) = integrate_adaptive(
        |s| Ok(2.0 / (m * (-divided_g(q, x_lo + s * s, x_lo)).sqrt())),
        0.0,
        (mid - x_lo).sqrt(),
        tol,
    )?;
    let (upper, _) =
        integrate_adaptive(|s| Ok(2.0 / (m * divided_g(q, x_hi - s * s, x_hi).sqrt())), 0.0, (x_hi - mid).sqrt(), tol)?;
    let t = 2.0 * (lower + upper);
    if !t.is_finite() {
        return Err(Error::Accuracy { what: "period quadrature", achieved: f64::INFINITY, requested: tol });
    }
    Ok(t)
}

/// Divided difference `(g(x1) − g(x2)) / (x1 − x2)` of
/// `g(x) = ((1+x)^q − 1 − qx)/(2q) − x²/4`, accurate for close arguments.
fn divided_g(q: f64, x1: f64, x2: f64) -> f64 {
    (divided_power_minus_linear(q, x1, x2) / (2.0 * q)) - 0.25 * (x1 + x2)
}

/// Divided difference of `(1+x)^q − 1 − qx`.
fn divided_power_minus_linear(q: f64, x1: f64, x2: f64) -> f64 {
    if x1.abs().max(x2.abs()) <= 0.5 {
        // Σ_{k≥2} C(q,k) h_{k-1}(x1, x2), h_j the complete homogeneous sum.
        let (mut coef, mut h, mut x2k) = (q, 1.0, 1.0);
        let mut sum = 0.0;
        for k in 2..400 {
            coef *= (q - (k - 1) as f64) / k as f64;
            x2k *= x2;
            h = x1 * h + x2k;
            let term = coef * h;
            sum += term;
            if coef == 0.0 || term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        return sum;
    }
    let d = x1 - x2;
    let p = if d == 0.0 {
        q * (1.0 + x2).powf(q - 1.0)
    } else {
        (1.0 + x2).powf(q) * (q * (d / (1.0 + x2)).ln_1p()).exp_m1() / d
    };
    p - q
}

/// Dense record of an integrated trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    interp: QuinticHermite,
}

impl Trajectory {
    pub fn knots(&self) -> &[f64] {
        self.interp.knots()
    }

    pub fn end(&self) -> f64 {
        self.interp.end()
    }

    /// `(v, v', v'')` on the integrated range, without folding.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        self.interp.eval(t)
    }
}

/// A Delaunay-Fowler profile started at its maximum: `v(0) = v_max`, `v'(0) = 0`.
#[derive(Debug, Clone)]
pub struct DelaunayProfile {
    pub n: Dimension,
    pub eps: f64,
    pub energy: f64,
    pub v_max: f64,
    /// Period from the turning-point quadrature.
    pub period: f64,
    /// Mean spacing of successive minima along the integrated trajectory.
    pub measured_period: f64,
    /// Smallest value of `v` along the trajectory.
    pub min_value: f64,
    /// Maximum of `|H(v, v') − H| / |H|` over the accepted steps.
    pub drift: f64,
    pub periods: usize,
    pub tol: f64,
    pub trajectory: Trajectory,
}

/// Integrates the cylindrical ODE over `periods` periods from the upper
/// turning point with DOP853 at `rtol = atol = tol` and steps no longer than
/// 0.05, and checks that the energy drift stays within `100·tol`.
pub fn integrate_delaunay(n: Dimension, eps: f64, periods: usize, tol: f64) -> Result<DelaunayProfile> {
    check_neck(n, eps)?;
    if !(tol > 0.0) || periods == 0 {
        return Err(Error::domain("need tol > 0 and at least one period"));
    }
    let energy = neck_to_energy(n, eps)?;
    let v_max = upper_turning_point(n, energy)?;
    let t_period = period(n, eps)?;

    let a2 = n.conformal_weight().powi(2);
    let k = n.sphere_curvature();
    let p = n.critical_exponent();
    let rhs = move |_t: f64, y: &[f64; 2]| [y[1], a2 * y[0] - k * y[0].powf(p)];
    let opts = OdeOptions { h_max: 0.05, ..OdeOptions::with_tol(tol) };
    let sol = dop853(rhs, 0.0, [v_max, 0.0], periods as f64 * t_period, &opts)?;

    let mut drift: f64 = 0.0;
    for y in &sol.y {
        let hv = hamiltonian(n, y[0], y[1])?;
        drift = drift.max(((hv - energy) / energy).abs());
    }
    let bound = 100.0 * tol;
    if drift > bound {
        return Err(Error::IntegratorAccuracy { drift, bound });
    }

    let interp = QuinticHermite::new(
        sol.t.clone(),
        sol.y.iter().map(|y| y[0]).collect(),
        sol.y.iter().map(|y| y[1]).collect(),
        sol.dy.iter().map(|d| d[1]).collect(),
    );
    let mut minima = Vec::new();
    for i in 0..sol.t.len() - 1 {
        if sol.y[i][1] < 0.0 && sol.y[i + 1][1] >= 0.0 {
            let tm = find_root(|t| interp.eval(t).1, sol.t[i], sol.t[i + 1], 1e-14)?;
            minima.push(tm);
        }
    }
    if minima.is_empty() {
        return Err(Error::Precondition("no minimum found along the trajectory".into()));
    }
    let measured_period = if minima.len() >= 2 {
        (minima[minima.len() - 1] - minima[0]) / (minima.len() - 1) as f64
    } else {
        2.0 * minima[0]
    };
    let min_value = minima.iter().map(|&t| interp.eval(t).0).fold(f64::INFINITY, f64::min);

    Ok(DelaunayProfile {
        n,
        eps,
        energy,
        v_max,
        period: t_period,
        measured_period,
        min_value,
        drift,
        periods,
        tol,
        trajectory: Trajectory { interp },
    })
}

impl DelaunayProfile {
    /// `(v, v', v'')` at any `t`, using periodicity and evenness about 0.
    pub fn eval_full(&self, t: f64) -> (f64, f64, f64) {
        let period = self.period;
        let mut tau = t.rem_euclid(period);
        let mut sign = 1.0;
        if tau > 0.5 * period {
            tau = period - tau;
            sign = -1.0;
        }
        let (v, vp, vpp) = self.trajectory.eval(tau);
        (v, sign * vp, vpp)
    }
}

impl Profile for DelaunayProfile {
    fn dim(&self) -> Dimension {
        self.n
    }

    fn eval(&self, t: f64) -> (f64, f64) {
        let (v, vp, _) = self.eval_full(t);
        (v, vp)
    }

    fn energy(&self) -> Result<f64> {
        Ok(self.energy)
    }
}
