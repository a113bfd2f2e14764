//! Explicit Runge-Kutta integration with the Dormand-Prince 8(5,3) pair.
//!
//! Returns every accepted step; interpolation between steps is left to the
//! caller, which usually knows more about the system than a generic dense
//! output would.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Upper bound on |h|.
    pub h_max: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions { rtol: tol, atol: tol, h_max: f64::INFINITY, max_steps: 1_000_000 }
    }
}

/// Accepted steps of an integration, including both endpoints.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub t: Vec<f64>,
    pub y: Vec<[f64; N]>,
    /// Right-hand side at each stored point.
    pub dy: Vec<[f64; N]>,
    pub rejected: usize,
}

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

const C: [f64; 12] = [
    0.0,
    0.05260015195876773,
    0.0789002279381516,
    0.1183503419072274,
    0.2816496580927726,
    0.3333333333333333,
    0.25,
    0.3076923076923077,
    0.6512820512820513,
    0.6,
    0.8571428571428571,
    1.0,
];
const A: [[f64; 12]; 13] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.05260015195876773, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0197250569845379, 0.0591751709536137, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.02958758547680685, 0.0, 0.08876275643042054, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2413651341592667, 0.0, -0.8845494793282861, 0.924834003261792, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.037037037037037035, 0.0, 0.0, 0.17082860872947386, 0.12546768756682242, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.037109375, 0.0, 0.0, 0.17025221101954405, 0.06021653898045596, -0.017578125, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [
        0.03709200011850479,
        0.0,
        0.0,
        0.17038392571223998,
        0.10726203044637328,
        -0.015319437748624402,
        0.008273789163814023,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.6241109587160757,
        0.0,
        0.0,
        -3.3608926294469414,
        -0.868219346841726,
        27.59209969944671,
        20.154067550477894,
        -43.48988418106996,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.47766253643826434,
        0.0,
        0.0,
        -2.4881146199716677,
        -0.590290826836843,
        21.230051448181193,
        15.279233632882423,
        -33.28821096898486,
        -0.020331201708508627,
        0.0,
        0.0,
        0.0,
    ],
    [
        -0.9371424300859873,
        0.0,
        0.0,
        5.186372428844064,
        1.0914373489967295,
        -8.149787010746927,
        -18.52006565999696,
        22.739487099350505,
        2.4936055526796523,
        -3.0467644718982196,
        0.0,
        0.0,
    ],
    [
        2.273310147516538,
        0.0,
        0.0,
        -10.53449546673725,
        -2.0008720582248625,
        -17.9589318631188,
        27.94888452941996,
        -2.8589982771350235,
        -8.87285693353063,
        12.360567175794303,
        0.6433927460157636,
        0.0,
    ],
    [
        0.054293734116568765,
        0.0,
        0.0,
        0.0,
        0.0,
        4.450312892752409,
        1.8915178993145003,
        -5.801203960010585,
        0.3111643669578199,
        -0.1521609496625161,
        0.20136540080403034,
        0.04471061572777259,
    ],
];
const E3: [f64; 12] = [
    -0.18980075407240762,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450312892752409,
    1.8915178993145003,
    -5.801203960010585,
    -0.4226823213237919,
    -0.1521609496625161,
    0.20136540080403034,
    0.02265179219836082,
];
const E5: [f64; 12] = [
    0.01312004499419488,
    0.0,
    0.0,
    0.0,
    0.0,
    -1.2251564463762044,
    -0.4957589496572502,
    1.6643771824549864,
    -0.35032884874997366,
    0.3341791187130175,
    0.08192320648511571,
    -0.022355307863886294,
];

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction).
pub fn dop853<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opts: &OdeOptions,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    if !(opts.rtol > 0.0 && opts.atol > 0.0 && opts.h_max > 0.0) {
        return Err(Error::domain("tolerances and maximum step must be positive"));
    }
    if !t0.is_finite() || !t_end.is_finite() || y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("non-finite initial data"));
    }
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut fy = f(t, &y);
    let mut sol = OdeSolution { t: vec![t], y: vec![y], dy: vec![fy], rejected: 0 };
    if t_end == t0 {
        return Ok(sol);
    }

    let scale_of = |a: &[f64; N], b: &[f64; N]| -> [f64; N] {
        let mut s = [0.0; N];
        for i in 0..N {
            s[i] = opts.atol + opts.rtol * a[i].abs().max(b[i].abs());
        }
        s
    };

    let mut h_abs = initial_step(&mut f, t, &y, &fy, dir, opts).min(opts.h_max);
    let mut k = [[0.0; N]; 12];
    let mut steps = 0usize;
    while dir * (t_end - t) > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Accuracy { what: "ODE step budget", achieved: t, requested: t_end });
        }
        let min_step = 10.0 * (next_toward(t, dir) - t).abs();
        h_abs = h_abs.clamp(min_step, opts.h_max);
        let mut last = false;
        if h_abs >= dir * (t_end - t) {
            h_abs = dir * (t_end - t);
            last = true;
        }

        loop {
            let h = dir * h_abs;
            k[0] = fy;
            for s in 1..12 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        for i in 0..N {
                            ys[i] += h * a * kj[i];
                        }
                    }
                }
                k[s] = f(t + C[s] * h, &ys);
            }
            let mut y_new = y;
            for (j, kj) in k.iter().enumerate() {
                let b = A[12][j];
                if b != 0.0 {
                    for i in 0..N {
                        y_new[i] += h * b * kj[i];
                    }
                }
            }
            let scale = scale_of(&y, &y_new);
            let (mut e5, mut e3) = (0.0, 0.0);
            for i in 0..N {
                let (mut s5, mut s3) = (0.0, 0.0);
                for j in 0..12 {
                    s5 += E5[j] * k[j][i];
                    s3 += E3[j] * k[j][i];
                }
                e5 += (s5 / scale[i]).powi(2);
                e3 += (s3 / scale[i]).powi(2);
            }
            let err = if e5 == 0.0 && e3 == 0.0 { 0.0 } else { h_abs * e5 / ((e5 + 0.01 * e3) * N as f64).sqrt() };
            if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
                if h_abs <= min_step {
                    return Err(Error::domain(format!("ODE right-hand side not finite near t = {t}")));
                }
                h_abs *= MIN_FACTOR;
                last = false;
                sol.rejected += 1;
                continue;
            }
            if err <= 1.0 {
                let factor = if err == 0.0 { MAX_FACTOR } else { (SAFETY * err.powf(-1.0 / 8.0)).min(MAX_FACTOR) };
                t = if last { t_end } else { t + h };
                y = y_new;
                fy = f(t, &y);
                sol.t.push(t);
                sol.y.push(y);
                sol.dy.push(fy);
                h_abs *= factor;
                break;
            }
            if h_abs <= min_step {
                return Err(Error::Accuracy { what: "ODE step size underflow", achieved: err, requested: 1.0 });
            }
            h_abs *= (SAFETY * err.powf(-1.0 / 8.0)).max(MIN_FACTOR);
            last = false;
            sol.rejected += 1;
        }
    }
    Ok(sol)
}

fn next_toward(t: f64, dir: f64) -> f64 {
    let bits = t.to_bits();
    let up = (t >= 0.0) == (dir > 0.0);
    if t == 0.0 {
        return dir * f64::from_bits(1);
    }
    f64::from_bits(if up { bits + 1 } else { bits - 1 })
}

// Hairer's starting-step heuristic.
fn initial_step<const N: usize, F>(f: &mut F, t0: f64, y0: &[f64; N], f0: &[f64; N], dir: f64, opts: &OdeOptions) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let rms = |v: &dyn Fn(usize) -> f64| -> f64 { ((0..N).map(|i| v(i).powi(2)).sum::<f64>() / N as f64).sqrt() };
    let scale: Vec<f64> = y0.iter().map(|v| opts.atol + opts.rtol * v.abs()).collect();
    let d0 = rms(&|i| y0[i] / scale[i]);
    let d1 = rms(&|i| f0[i] / scale[i]);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let mut y1 = *y0;
    for i in 0..N {
        y1[i] += dir * h0 * f0[i];
    }
    let f1 = f(t0 + dir * h0, &y1);
    let d2 = rms(&|i| (f1[i] - f0[i]) / scale[i]) / h0;
    let h1 = if d1 <= 1e-15 && d2 <= 1e-15 { (1e-6f64).max(h0 * 1e-3) } else { (0.01 / d1.max(d2)).powf(1.0 / 8.0) };
    (100.0 * h0).min(h1)
}
