use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Symmetry};
use crate::numerics::{vector, Dimension};

use super::sampling::SphereSampler;

/// Outer radius of the punctured ball on which the rescaling works.
const OUTER: f64 = 5.0 / 8.0;

/// `d_ε(x) = max{0, min{|x| − ε, 5/8 − |x|}}`.
pub fn cutoff_distance(x: &[f64], eps: f64) -> f64 {
    let r = vector::norm(x);
    (r - eps).min(OUTER - r).max(0.0)
}

/// `W_ε(x) = d_ε(x)^{(n-2)/2} w(x)`; zero outside the annulus `ε < |x| < 5/8`.
pub fn weighted_value(w: &dyn Field, x: &[f64], eps: f64) -> Result<f64> {
    let d = cutoff_distance(x, eps);
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(d.powf(w.dim().conformal_weight()) * w.value(x)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleSettings {
    /// Radius of the ball `B(R)` on which the rescaled profile is compared.
    pub radius: f64,
    /// Log-spaced radii of the coarse maximizer grid.
    pub radial_points: usize,
    /// Directions of the coarse grid and of the profile sampling.
    pub angular_points: usize,
    /// Radial rings of the profile sampling.
    pub profile_rings: usize,
    /// Number of coarse-grid points refined by local search.
    pub starts: usize,
    pub seed: u64,
}

impl Default for RescaleSettings {
    fn default() -> Self {
        RescaleSettings { radius: 5.0, radial_points: 200, angular_points: 33, profile_rings: 50, starts: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSample {
    pub x: Vec<f64>,
    /// Rescaled profile `v(x)`; infinite where `w` cannot be evaluated.
    pub value: f64,
    /// `u_{1,0}(x) = (1 + |x|²)^{-(n-2)/2}`.
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RescaleReport {
    pub eps: f64,
    /// Maximizer `x_ε` of `W_ε`.
    pub max_point: Vec<f64>,
    /// `M_ε = W_ε(x_ε)`.
    pub m_eps: f64,
    /// `μ = w(x_ε)^{-2/(n-2)}`.
    pub mu: f64,
    /// `R_ε = d_ε(x_ε)/(2μ) = ½ M_ε^{2/(n-2)}`, the radius on which `v ≤ 2^{(n-2)/2}` is guaranteed.
    pub guaranteed_radius: f64,
    pub radius: f64,
    pub profile: Vec<ProfileSample>,
    /// `sup_{B(R)} |v − u_{1,0}|` over the samples.
    pub sup_deviation: f64,
    /// Whether the preimage `−x_ε/μ` of the origin lies in `B(R)`.
    pub puncture_inside: bool,
    /// Whether `R_ε < R`, i.e. `M_ε` is too small for the rescaled ball to
    /// cover `B(R)`; this is what bounded `M_ε` looks like at a single `ε`.
    pub degenerate: bool,
}

/// Nelder-Mead maximization of `f` from `x0` with initial steps `steps`.
fn nelder_mead(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], steps: &[f64]) -> (Vec<f64>, f64) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut p = x0.to_vec();
        p[i] += steps[i];
        let v = f(&p);
        simplex.push((p, v));
    }
    for _ in 0..4000 {
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (best, worst) = (simplex[0].1, simplex[d].1);
        let size = simplex[1..].iter().map(|(p, _)| vector::norm(&vector::sub(p, &simplex[0].0))).fold(0.0, f64::max);
        if (best - worst).abs() <= 1e-14 * best.abs() && size < 1e-10 {
            break;
        }
        let centroid: Vec<f64> =
            (0..d).map(|k| simplex[..d].iter().map(|(p, _)| p[k]).sum::<f64>() / d as f64).collect();
        let along = |s: f64| vector::axpy(&centroid, s, &vector::sub(&simplex[d].0, &centroid));
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr > simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[d] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > simplex[d - 1].1 {
            simplex[d] = (xr, fr);
        } else {
            let xc = if fr > worst { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc > worst.max(fr) {
                simplex[d] = (xc, fc);
            } else {
                let x0 = simplex[0].0.clone();
                for (p, v) in simplex[1..].iter_mut() {
                    *p = vector::scale(&vector::add(p, &x0), 0.5);
                    *v = f(p);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    simplex.swap_remove(0)
}

/// Parametrization of the search domain adapted to the field's symmetry.
enum Chart {
    Radial(Vec<f64>),
    Polar { axis: Vec<f64>, perp: Vec<f64> },
    Cartesian,
}

impl Chart {
    fn point(&self, p: &[f64]) -> Vec<f64> {
        match self {
            Chart::Radial(dir) => vector::scale(dir, p[0].exp()),
            Chart::Polar { axis, perp } => vector::polar_point(p[0].exp(), p[1], axis, perp),
            Chart::Cartesian => p.to_vec(),
        }
    }

    fn coordinates(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Chart::Radial(_) => vec![vector::norm(x).ln()],
            Chart::Polar { axis, perp } => {
                vec![vector::norm(x).ln(), vector::dot(x, perp).atan2(vector::dot(x, axis))]
            }
            Chart::Cartesian => x.to_vec(),
        }
    }

    fn steps(&self, x: &[f64], dlog: f64, dphi: f64) -> Vec<f64> {
        match self {
            Chart::Radial(_) => vec![dlog],
            Chart::Polar { .. } => vec![dlog, dphi],
            Chart::Cartesian => vec![vector::norm(x) * dlog; x.len()],
        }
    }
}

/// Locates the maximizer of `W_ε` and forms the rescaled profile
/// `v(x) = μ^{(n-2)/2} w(x_ε + μx)`, `μ = w(x_ε)^{-2/(n-2)}`, compared with
/// `u_{1,0}` on `B(R)`.
///
/// The maximizer is found on a log-radial grid over `ε < |x| < 5/8` times
/// sphere directions, and the best `starts` grid points are refined by
/// Nelder-Mead. A maximizer within `1e-6` (relative) of either edge of the
/// annulus is reported as a search failure.
pub fn blowup_rescale(w: &dyn Field, eps: f64, settings: &RescaleSettings) -> Result<RescaleReport> {
    if !(eps > 0.0 && eps < OUTER) {
        return Err(Error::domain(format!("eps must lie in (0, 5/8), got {eps}")));
    }
    if !(settings.radius > 0.0) || settings.radial_points < 3 || settings.starts == 0 {
        return Err(Error::domain("rescale settings need R > 0, 3 radial points and one start"));
    }
    let n = w.dim();
    let nn = n.get();
    let a = n.conformal_weight();
    let symmetry = w.symmetry();
    let chart = match &symmetry {
        Symmetry::Radial => Chart::Radial(vector::unit(nn, 0)),
        Symmetry::Axisymmetric(axis) => Chart::Polar { axis: axis.clone(), perp: vector::orthogonal_unit(axis) },
        Symmetry::General => Chart::Cartesian,
    };
    let sampler = SphereSampler::new(nn, &symmetry, settings.angular_points, settings.seed);
    let objective = |x: &[f64]| weighted_value(w, x, eps).unwrap_or(0.0);

    let (lo, hi) = (eps.ln(), OUTER.ln());
    let m = settings.radial_points;
    let dlog = (hi - lo) / (m + 1) as f64;
    let mut coarse = Vec::with_capacity(m * sampler.directions().len());
    for j in 1..=m {
        let r = (lo + dlog * j as f64).exp();
        for x in sampler.points(&vec![0.0; nn], r) {
            let v = objective(&x);
            coarse.push((x, v));
        }
    }
    coarse.sort_by(|a, b| b.1.total_cmp(&a.1));
    let dphi = std::f64::consts::PI / (settings.angular_points.max(2) - 1) as f64;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for (x, _) in coarse.iter().take(settings.starts) {
        let p0 = chart.coordinates(x);
        let (p, v) = nelder_mead(|p| objective(&chart.point(p)), &p0, &chart.steps(x, dlog, dphi));
        if best.as_ref().is_none_or(|b| v > b.1) {
            best = Some((chart.point(&p), v));
        }
    }
    let (x_max, m_eps) = best.expect("at least one start");
    let r_max = vector::norm(&x_max);
    if !(m_eps > 0.0) || (r_max - eps) <= 1e-6 * eps || (OUTER - r_max) <= 1e-6 * OUTER {
        return Err(Error::SearchFailure(format!(
            "maximizer of W at |x| = {r_max:.6e} lies on the edge of [{eps}, 5/8]"
        )));
    }

    let w_max = w.value(&x_max)?;
    let mu = w_max.powf(-1.0 / a);
    let guaranteed_radius = cutoff_distance(&x_max, eps) / (2.0 * mu);
    let radius = settings.radius;

    // v inherits a symmetry axis through the origin and x_ε when w has one
    let profile_symmetry = match (&symmetry, vector::normalized(&x_max)) {
        (Symmetry::Radial, Some(dir)) => Symmetry::Axisymmetric(dir),
        (Symmetry::Axisymmetric(axis), _)
            if vector::norm(&vector::axpy(&x_max, -vector::dot(&x_max, axis), axis)) <= 1e-12 * r_max =>
        {
            Symmetry::Axisymmetric(axis.clone())
        }
        _ => Symmetry::General,
    };
    let profile_dirs = SphereSampler::new(nn, &profile_symmetry, settings.angular_points, settings.seed);
    let rings = settings.profile_rings.max(1);
    let mut profile = Vec::with_capacity(1 + rings * profile_dirs.directions().len());
    let origin = vec![0.0; nn];
    let mut push = |x: Vec<f64>| {
        let y = vector::axpy(&x_max, mu, &x);
        let value = match w.value(&y) {
            // μ^{(n-2)/2} = 1/w(x_ε)
            Ok(v) if v.is_finite() => v / w_max,
            _ => f64::INFINITY,
        };
        let reference = (1.0 + vector::norm_sq(&x)).powf(-a);
        profile.push(ProfileSample { x, value, reference });
    };
    push(origin.clone());
    for k in 1..=rings {
        let rho = radius * k as f64 / rings as f64;
        for x in profile_dirs.points(&origin, rho) {
            push(x);
        }
    }
    let sup_deviation = profile.iter().map(|s| (s.value - s.reference).abs()).fold(0.0, f64::max);

    Ok(RescaleReport {
        eps,
        max_point: x_max,
        m_eps,
        mu,
        guaranteed_radius,
        radius,
        profile,
        sup_deviation,
        puncture_inside: r_max / mu < radius,
        degenerate: guaranteed_radius < radius,
    })
}

/// `x ↦ u(δx + y)/m` with `δ = m^{-(s-2)/2}`.
pub struct NormalizedBlowup {
    inner: Arc<dyn Field>,
    center: Vec<f64>,
    m: f64,
    delta: f64,
    symmetry: Symmetry,
}

/// Normalized blow-up of `u` about `y` with height `m = u(y)` and exponent
/// `s ∈ (2, 2n/(n-2)]`.
pub fn normalized_blowup(u: Arc<dyn Field>, y: &[f64], m: f64, s: f64) -> Result<NormalizedBlowup> {
    let n = u.dim();
    if y.len() != n.get() {
        return Err(Error::domain(format!("center has {} components, expected {n}", y.len())));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::domain(format!("height must be positive, got {m}")));
    }
    if !(s > 2.0 && s <= n.mass_exponent() + 1e-12) {
        return Err(Error::domain(format!("exponent must lie in (2, {}], got {s}", n.mass_exponent())));
    }
    let symmetry = match (u.symmetry(), vector::normalized(y)) {
        (Symmetry::Radial, None) => Symmetry::Radial,
        (Symmetry::Radial, Some(dir)) => Symmetry::Axisymmetric(dir),
        (Symmetry::Axisymmetric(axis), None) => Symmetry::Axisymmetric(axis),
        (Symmetry::Axisymmetric(axis), Some(dir)) if vector::dot(&axis, &dir).abs() > 1.0 - 1e-12 => {
            Symmetry::Axisymmetric(axis)
        }
        _ => Symmetry::General,
    };
    Ok(NormalizedBlowup { inner: u, center: y.to_vec(), m, delta: m.powf(-(s - 2.0) / 2.0), symmetry })
}

impl NormalizedBlowup {
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

impl Field for NormalizedBlowup {
    fn dim(&self) -> Dimension {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.inner.value(&vector::axpy(&self.center, self.delta, x))? / self.m)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let g = self.inner.gradient(&vector::axpy(&self.center, self.delta, x))?;
        Ok(vector::scale(&g, self.delta / self.m))
    }

    fn symmetry(&self) -> Symmetry {
        // symmetry about the origin of the rescaled variable
        match &self.symmetry {
            Symmetry::Radial => Symmetry::Radial,
            Symmetry::Axisymmetric(axis) => Symmetry::Axisymmetric(axis.clone()),
            Symmetry::General => Symmetry::General,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::solutions::SphericalSolution;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn cutoff_vanishes_outside_the_annulus() {
        assert_eq!(cutoff_distance(&[0.05, 0.0, 0.0], 0.1), 0.0);
        assert_eq!(cutoff_distance(&[0.7, 0.0, 0.0], 0.1), 0.0);
        assert!((cutoff_distance(&[0.2, 0.0, 0.0], 0.1) - 0.1).abs() < 1e-15);
        assert!((cutoff_distance(&[0.6, 0.0, 0.0], 0.1) - 0.025).abs() < 1e-15);
    }

    #[test]
    fn normalized_blowup_is_one_at_origin() {
        let u: Arc<dyn Field> = Arc::new(SphericalSolution::new(dim(3), 0.3, vec![0.1, 0.2, 0.0]).unwrap());
        let y = vec![0.1, 0.2, 0.0];
        let m = u.value(&y).unwrap();
        let v = normalized_blowup(u.clone(), &y, m, 6.0).unwrap();
        assert_eq!(v.value(&[0.0; 3]).unwrap(), 1.0);
        // critical rescaling of a bubble about its center is the standard bubble
        for x in [[0.5, 0.0, 0.0], [1.0, -2.0, 0.3], [0.0, 0.0, 7.0]] {
            let want = SphericalSolution::standard(dim(3)).value(&x).unwrap();
            assert!((v.value(&x).unwrap() - want).abs() < 1e-14);
        }
        assert!(normalized_blowup(u.clone(), &y, m, 2.0).is_err());
        assert!(normalized_blowup(u.clone(), &y, m, 6.5).is_err());
        assert!(normalized_blowup(u, &y, 0.0, 4.0).is_err());
    }

    #[test]
    fn delta_decreases_with_height() {
        let u: Arc<dyn Field> = Arc::new(FnField::constant(dim(3), 2.0));
        let y = [0.0; 3];
        let d1 = normalized_blowup(u.clone(), &y, 2.0, 4.0).unwrap().delta();
        let d2 = normalized_blowup(u, &y, 8.0, 4.0).unwrap().delta();
        assert!(d2 < d1);
    }

    #[test]
    fn nelder_mead_finds_a_quadratic_peak() {
        let (p, v) = nelder_mead(|x| -(x[0] - 1.0).powi(2) - 3.0 * (x[1] + 0.5).powi(2), &[0.0, 0.0], &[0.1, 0.1]);
        assert!((p[0] - 1.0).abs() < 1e-8 && (p[1] + 0.5).abs() < 1e-8 && v.abs() < 1e-15);
    }

    #[test]
    fn bounded_w_is_flagged_degenerate() {
        let w = FnField::constant(dim(3), 1.0);
        let rep = blowup_rescale(&w, 0.05, &RescaleSettings::default()).unwrap();
        // W = d^{1/2} peaks where d is largest: |x| = (ε + 5/8)/2
        assert!((vector::norm(&rep.max_point) - 0.3375).abs() < 1e-6);
        assert!((rep.m_eps - 0.2875f64.sqrt()).abs() < 1e-10);
        assert!(rep.degenerate);
        assert_eq!(rep.profile[0].value, 1.0);
    }

    #[test]
    fn concentrated_bubble_is_recovered() {
        // a tall bubble away from the puncture blows up to u_{1,0}
        let w = SphericalSolution::new(dim(3), 1e-4, vec![0.3, 0.0, 0.0]).unwrap();
        let rep = blowup_rescale(&w, 0.05, &RescaleSettings::default()).unwrap();
        assert!(vector::norm(&vector::sub(&rep.max_point, &[0.3, 0.0, 0.0])) < 1e-6);
        assert!(!rep.degenerate && !rep.puncture_inside);
        assert!(rep.sup_deviation < 1e-3, "{}", rep.sup_deviation);
    }
}
