use crate::error::{Error, Result};

/// Bracketing root finder: Illinois-style false position with a bisection
/// safeguard whenever the bracket fails to halve over two iterations.
///
/// Requires a sign change on `[lo, hi]`. Terminates when the bracket width is
/// at most `tol` (or a few ulps of the root) and returns the endpoint with the
/// smaller residual.
pub fn find_root(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::domain(format!("invalid root bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa * fb < 0.0) {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }

    // side: which endpoint was retained last time (-1 = a, +1 = b)
    let mut side = 0i8;
    let mut width_two_back = f64::INFINITY;
    let mut width_prev = b - a;
    for _ in 0..500 {
        let width = b - a;
        if width <= tol.max(4.0 * f64::EPSILON * a.abs().max(b.abs())) {
            break;
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        if !(x > a && x < b) || width > 0.5 * width_two_back {
            x = 0.5 * (a + b);
        }
        width_two_back = width_prev;
        width_prev = width;

        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.is_nan() {
            return Err(Error::Bracket { lo: a, hi: b, f_lo: fa, f_hi: fb });
        }
        if fx * fb < 0.0 {
            a = b;
            fa = fb;
            b = x;
            fb = fx;
            side = 0;
        } else {
            b = x;
            fb = fx;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
            side = -side;
        }
    }
    let (fa_true, fb_true) = (f(a), f(b));
    Ok(if fa_true.abs() <= fb_true.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn square_root_of_two() {
        let x = find_root(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cosine_zero() {
        let x = find_root(f64::cos, 1.0, 2.0, 1e-12).unwrap();
        assert!((x - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change_is_a_bracket_error() {
        let r = find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::Bracket { .. })));
    }

    #[test]
    fn flat_functions_still_converge() {
        // Tenth-order root, where plain false position stalls.
        let x = find_root(|x: f64| (x - 0.3).powi(11), 0.0, 1.0, 1e-12).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
    }

    #[test]
    fn idempotent_on_small_bracket() {
        let f = |x: f64| x.exp() - 3.0;
        let r = find_root(f, 0.0, 2.0, 1e-13).unwrap();
        let again = find_root(f, r - 1e-6, r + 1e-6, 1e-13).unwrap();
        assert!((r - again).abs() <= 1e-13);
    }
}
