use std::f64::consts::PI;
use std::sync::Arc;

use proptest::prelude::*;
use yamabe_core::field::pde_residual;
use yamabe_core::numerics::vector;
use yamabe_core::solutions::SphericalSolution;
use yamabe_core::transforms::*;
use yamabe_core::{Dimension, Field};

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `(λ e^s / (λ² + e^{2s} − 2e^s cos φ |ξ| + |ξ|²))^{(n-2)/2}`, the
/// cylindrical form of a bubble written out by hand.
fn cylinder_of_bubble(n: usize, lambda: f64, xi_norm: f64, s: f64, phi: f64) -> f64 {
    let e = s.exp();
    (lambda * e / (lambda * lambda + e * e - 2.0 * e * phi.cos() * xi_norm + xi_norm * xi_norm))
        .powf((n as f64 - 2.0) / 2.0)
}

fn bubble(n: usize, lambda: f64, c: f64) -> Arc<dyn Field> {
    let mut xi = vec![0.0; n];
    xi[0] = c;
    Arc::new(SphericalSolution::new(dim(n), lambda, xi).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cylindrical_transform_matches_closed_form(
        n in 3usize..7, lambda in 0.2f64..3.0, c in 0.05f64..2.0, s in -3.0f64..3.0, phi in 0.0f64..PI,
    ) {
        let v = to_cylinder(bubble(n, lambda, c), Orientation::Outward).unwrap();
        let want = cylinder_of_bubble(n, lambda, c, s, phi);
        prop_assert!(rel(v.value(s, phi).unwrap(), want) < 1e-12);
    }

    #[test]
    fn equal_ratio_bubbles_are_shifts(
        n in 3usize..7, l1 in 0.2f64..3.0, l2 in 0.2f64..3.0, c in 0.05f64..2.0, s in -3.0f64..3.0, phi in 0.0f64..PI,
    ) {
        let v1 = to_cylinder(bubble(n, l1, c), Orientation::Outward).unwrap();
        let v2 = to_cylinder(bubble(n, l2, c * l2 / l1), Orientation::Outward).unwrap();
        let shift = (l2 / l1).ln();
        prop_assert!(rel(v1.value(s, phi).unwrap(), v2.value(s + shift, phi).unwrap()) < 1e-10);
    }

    #[test]
    fn kelvin_image_of_a_bubble_is_a_bubble(
        n in 3usize..7, lambda in 0.2f64..3.0, c in -2.0f64..2.0, a in 0.3f64..3.0,
        x in prop::collection::vec(-3.0f64..3.0, 6),
    ) {
        let d = dim(n);
        let u = bubble(n, lambda, c);
        let mut xi = vec![0.0; n];
        xi[0] = c;
        let (lt, xt) = kelvin_spherical_params(d, lambda, &xi, a).unwrap();
        prop_assert!((vector::norm(&xt) / lt - c.abs() / lambda).abs() < 1e-12 * (1.0 + c.abs() / lambda));
        let ku = KelvinField::new(u, KelvinParams::new(a).unwrap());
        let want = SphericalSolution::new(d, lt, xt).unwrap();
        let p = &x[..n];
        prop_assume!(vector::norm(p) > 1e-3);
        prop_assert!(rel(ku.value(p).unwrap(), want.value(p).unwrap()) < 1e-10);
    }

    #[test]
    fn reflection_is_kelvin_about_the_matching_sphere(
        n in 3usize..7, lambda in 0.2f64..3.0, c in 0.05f64..2.0, s0 in -1.5f64..1.5,
        s in -3.0f64..3.0, phi in 0.0f64..PI,
    ) {
        let u = bubble(n, lambda, c);
        let v = to_cylinder(u.clone(), Orientation::Outward).unwrap();
        let reflected = reflect(&v, s0);
        let ku: Arc<dyn Field> = Arc::new(KelvinField::new(u, KelvinParams::new(s0.exp()).unwrap()));
        let vk = to_cylinder(ku, Orientation::Outward).unwrap();
        prop_assert!(rel(reflected.value(s, phi).unwrap(), vk.value(s, phi).unwrap()) < 1e-10);
        // and it is also a translate of v
        let st = (lambda * lambda + c * c).ln() - 2.0 * s0;
        prop_assert!(rel(reflected.value(s, phi).unwrap(), v.value(s + st, phi).unwrap()) < 1e-10);
    }

    #[test]
    fn kelvin_is_an_involution(
        n in 3usize..7, lambda in 0.2f64..3.0, c in -2.0f64..2.0, a in 0.3f64..3.0,
        x in prop::collection::vec(-3.0f64..3.0, 6),
    ) {
        let p = KelvinParams::new(a).unwrap();
        let u = bubble(n, lambda, c);
        let kk = KelvinField::new(KelvinField::new(u.clone(), p), p);
        let pt = &x[..n];
        prop_assume!(vector::norm(pt) > 1e-3);
        prop_assert!(rel(kk.value(pt).unwrap(), u.value(pt).unwrap()) < 1e-12);
    }

    #[test]
    fn kelvin_preserves_the_equation(
        n in 3usize..6, lambda in 0.5f64..2.0, c in -1.0f64..1.0, a in 0.5f64..2.0,
        x in prop::collection::vec(0.3f64..2.0, 5),
    ) {
        let d = dim(n);
        let ku = KelvinField::new(bubble(n, lambda, c), KelvinParams::new(a).unwrap());
        let r = pde_residual(&ku, d.sphere_curvature(), &x[..n], 1e-3).unwrap();
        prop_assert!(r.abs() < 1e-5, "residual {r}");
    }

    #[test]
    fn orientation_round_trip(n in 3usize..6, lambda in 0.2f64..3.0, c in 0.05f64..2.0, t in -3.0f64..3.0, phi in 0.0f64..PI) {
        let v = to_cylinder(bubble(n, lambda, c), Orientation::Outward).unwrap();
        let w = v.with_orientation(Orientation::Inward);
        prop_assert_eq!(w.value(-t, phi).unwrap(), v.value(t, phi).unwrap());
        let back = w.with_orientation(Orientation::Outward);
        prop_assert_eq!(back.value(t, phi).unwrap(), v.value(t, phi).unwrap());
    }
}
