//! Small helpers for points of ℝⁿ stored as slices.

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s·b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Normalises `a`; `None` for the zero vector.
pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let r = norm(a);
    if r == 0.0 || !r.is_finite() {
        None
    } else {
        Some(scale(a, 1.0 / r))
    }
}

/// A unit vector orthogonal to the unit vector `axis`, chosen deterministically
/// by Gram-Schmidt against the coordinate vector least aligned with `axis`.
pub fn orthogonal_unit(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    let k = (0..n).min_by(|&i, &j| axis[i].abs().total_cmp(&axis[j].abs())).unwrap_or(0);
    let e = unit(n, k);
    let v = axpy(&e, -dot(&e, axis), axis);
    normalized(&v).expect("dimension at least 2")
}

/// The point `r (cos φ · axis + sin φ · perp)`.
pub fn polar_point(r: f64, phi: f64, axis: &[f64], perp: &[f64]) -> Vec<f64> {
    let (s, c) = phi.sin_cos();
    axis.iter().zip(perp).map(|(a, p)| r * (c * a + s * p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_unit_is_orthonormal() {
        let axis = normalized(&[0.3, -1.2, 0.5, 2.0]).unwrap();
        let p = orthogonal_unit(&axis);
        assert!(dot(&axis, &p).abs() < 1e-15);
        assert!((norm(&p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn polar_point_on_sphere() {
        let axis = [0.0, 0.0, 1.0];
        let perp = orthogonal_unit(&axis);
        let x = polar_point(2.5, 0.7, &axis, &perp);
        assert!((norm(&x) - 2.5).abs() < 1e-14);
        assert!((dot(&x, &axis) - 2.5 * 0.7f64.cos()).abs() < 1e-14);
    }
}
