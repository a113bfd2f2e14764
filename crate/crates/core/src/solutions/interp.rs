/// Piecewise quintic Hermite interpolant through `(t, y, y', y'')`.
///
/// C² across knots, which keeps finite-difference second derivatives of the
/// interpolant free of knot artefacts.
#[derive(Debug, Clone, PartialEq)]
pub struct QuinticHermite {
    t: Vec<f64>,
    y: Vec<f64>,
    dy: Vec<f64>,
    ddy: Vec<f64>,
}

impl QuinticHermite {
    /// `t` must be strictly increasing with at least two knots.
    pub fn new(t: Vec<f64>, y: Vec<f64>, dy: Vec<f64>, ddy: Vec<f64>) -> Self {
        assert!(t.len() >= 2 && y.len() == t.len() && dy.len() == t.len() && ddy.len() == t.len());
        assert!(t.windows(2).all(|w| w[0] < w[1]), "knots must increase");
        QuinticHermite { t, y, dy, ddy }
    }

    pub fn knots(&self) -> &[f64] {
        &self.t
    }

    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    /// `(y, y', y'')` at `t`, clamped to the knot range.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        let t = t.clamp(self.start(), self.end());
        let i = self.t.partition_point(|&k| k <= t).clamp(1, self.t.len() - 1) - 1;
        let h = self.t[i + 1] - self.t[i];
        let s = (t - self.t[i]) / h;
        let (p0, d0, e0) = (self.y[i], h * self.dy[i], h * h * self.ddy[i]);
        let (p1, d1, e1) = (self.y[i + 1], h * self.dy[i + 1], h * h * self.ddy[i + 1]);
        let c = [
            p0,
            d0,
            0.5 * e0,
            -10.0 * p0 - 6.0 * d0 - 1.5 * e0 + 10.0 * p1 - 4.0 * d1 + 0.5 * e1,
            15.0 * p0 + 8.0 * d0 + 1.5 * e0 - 15.0 * p1 + 7.0 * d1 - e1,
            -6.0 * p0 - 3.0 * d0 - 0.5 * e0 + 6.0 * p1 - 3.0 * d1 + 0.5 * e1,
        ];
        let v = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
        let dv = c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
        let ddv = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
        (v, dv / h, ddv / (h * h))
    }
}
