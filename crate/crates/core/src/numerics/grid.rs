use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    UniformLog,
    UniformLinear,
}

/// Strictly increasing positive radii, at least three of them.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    radii: Vec<f64>,
    spacing: Spacing,
}

impl RadialGrid {
    pub fn new(lo: f64, hi: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::domain(format!("radial grid needs 0 < lo < hi, got [{lo}, {hi}]")));
        }
        if count < 3 {
            return Err(Error::domain("radial grid needs at least 3 points"));
        }
        let last = (count - 1) as f64;
        let radii = match spacing {
            Spacing::UniformLinear => (0..count).map(|i| lo + (hi - lo) * i as f64 / last).collect(),
            Spacing::UniformLog => {
                let (a, b) = (lo.ln(), hi.ln());
                (0..count).map(|i| (a + (b - a) * i as f64 / last).exp()).collect()
            }
        };
        Self::from_radii(radii, spacing)
    }

    pub fn log(lo: f64, hi: f64, count: usize) -> Result<Self> {
        Self::new(lo, hi, count, Spacing::UniformLog)
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        Self::new(lo, hi, count, Spacing::UniformLinear)
    }

    /// Wraps explicit radii after validating them.
    pub fn from_radii(radii: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if radii.len() < 3 {
            return Err(Error::domain("radial grid needs at least 3 points"));
        }
        if radii[0] <= 0.0 || !radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::domain("radii must be positive and strictly increasing"));
        }
        Ok(RadialGrid { radii, spacing })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// `log10(r_max / r_min)`
    pub fn decades(&self) -> f64 {
        (self.radii[self.radii.len() - 1] / self.radii[0]).log10()
    }
}

/// Least-squares slope of the points `(x, y)`; NaN for fewer than two
/// distinct abscissae.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2)));
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        assert!((least_squares_slope(&pts) + 0.5).abs() < 1e-15);
        assert!(least_squares_slope(&[(1.0, 2.0)]).is_nan());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = RadialGrid::log(1.0, 1e4, 5).unwrap();
        assert!((g.radii()[2] - 100.0).abs() < 1e-10);
        assert!((g.decades() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(RadialGrid::log(0.0, 1.0, 5).is_err());
        assert!(RadialGrid::linear(1.0, 2.0, 2).is_err());
        assert!(RadialGrid::from_radii(vec![1.0, 1.0, 2.0], Spacing::UniformLinear).is_err());
    }
}
