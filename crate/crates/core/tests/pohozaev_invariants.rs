use std::f64::consts::PI;
use std::sync::Arc;

use proptest::prelude::*;
use yamabe_core::field::FnField;
use yamabe_core::numerics::{polar_quadrature, sphere_area, vector};
use yamabe_core::pohozaev::*;
use yamabe_core::solutions::{integrate_delaunay, neck_to_energy, SphericalSolution};
use yamabe_core::transforms::{deform_delaunay, KelvinField, KelvinParams};
use yamabe_core::{Dimension, Symmetry};

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn small_spheres() -> Vec<f64> {
    (2..=12).map(|j| 0.5f64.powi(j)).collect()
}

#[test]
fn radial_invariant_of_deformed_delaunay_is_half_sphere_times_energy() {
    let n = dim(3);
    let base = Arc::new(integrate_delaunay(n, 0.2, 2, 1e-10).unwrap());
    let u = deform_delaunay(base, vec![0.3, 0.0, 0.0], 1.0).unwrap();
    let rep =
        pohozaev_report(&u, &CurvatureFunction::standard(n), &small_spheres(), &PohozaevSettings::default()).unwrap();
    // independent closed form: H(ε) = −((n−2)/2)²ε² + (n−2)²ε^{2n/(n−2)}
    let h = -0.25 * 0.04 + 0.2f64.powi(6);
    let want = 0.5 * 4.0 * PI * h;
    assert!(rel(rep.p_invariant.unwrap(), want) < 1e-8);
    assert!(rep.p_values.iter().all(|p| rel(*p, want) < 1e-8));
}

#[test]
fn translational_invariant_follows_the_shifted_center() {
    // measured: P_i/P = 2 ξ_i e^{-T}, the position of the singular point of
    // the Kelvin image scaled by 2
    let n = dim(3);
    let base = Arc::new(integrate_delaunay(n, 0.2, 2, 1e-10).unwrap());
    for (xi, shift) in [(0.1, 0.0), (0.3, 0.0), (0.3, 1.0), (-0.2, 0.5)] {
        let u = deform_delaunay(base.clone(), vec![0.0, xi, 0.0], shift).unwrap();
        let rep = pohozaev_report(&u, &CurvatureFunction::standard(n), &small_spheres(), &PohozaevSettings::default())
            .unwrap();
        let p = rep.p_invariant.unwrap();
        let pi = rep.pi_invariant.unwrap();
        assert!(rel(pi[1] / p, 2.0 * xi * (-shift).exp()) < 1e-6, "xi {xi} T {shift}: {}", pi[1] / p);
        assert!(pi[0].abs() <= rep.pi_error && pi[2].abs() <= rep.pi_error);
    }
}

#[test]
fn bubbles_have_vanishing_invariants_at_infinity() {
    for n in [3, 4, 5] {
        let n = dim(n);
        let k = CurvatureFunction::standard(n);
        let quad = polar_quadrature(n, 64).unwrap();
        let mut xi = vec![0.0; n.get()];
        xi[0] = 0.4;
        let u = SphericalSolution::new(n, 0.8, xi).unwrap();
        assert!(radial_pohozaev(&u, &k, 1e3, &quad).unwrap().abs() < 1e-6);
        assert!(translational_pohozaev(&u, &k, 1e3, 1, &quad).unwrap().abs() < 1e-6);
    }
}

#[test]
fn exact_solutions_have_radius_independent_integrals() {
    let n = dim(3);
    let k = CurvatureFunction::standard(n);
    let quad = polar_quadrature(n, 64).unwrap();
    let base = Arc::new(integrate_delaunay(n, 0.1, 2, 1e-10).unwrap());
    let u = deform_delaunay(base, vec![0.0, 0.0, 0.25], 0.3).unwrap();
    let p0 = radial_pohozaev(&u, &k, 0.01, &quad).unwrap();
    for s in [0.02, 0.1, 0.5, 1.0] {
        assert!((radial_pohozaev(&u, &k, s, &quad).unwrap() - p0).abs() < 1e-9);
    }
}

#[test]
fn shell_bulk_matches_the_difference_of_boundary_integrals() {
    // u = e^h, h = c − α|x|² + b·x solves Δu + K u^p = 0 with
    // K = −S u^{1−p}, S = Δh + |∇h|² = −2nα + |b − 2αx|²
    let n = dim(3);
    let (nn, p) = (3.0, n.critical_exponent());
    let (c, alpha) = (0.1, 0.5);
    let b = [0.4, 0.0, 0.0];
    let h = move |x: &[f64]| c - alpha * vector::norm_sq(x) + vector::dot(&b, x);
    let grad_h = move |x: &[f64]| vector::axpy(&b, -2.0 * alpha, x);
    let axis = Symmetry::Axisymmetric(vector::unit(3, 0));
    let u = FnField::new(n, axis.clone(), move |x| Ok(h(x).exp()))
        .with_gradient(move |x| Ok(vector::scale(&grad_h(x), h(x).exp())));
    let s_of = move |x: &[f64]| -2.0 * nn * alpha + vector::norm_sq(&grad_h(x));
    let k = CurvatureFunction::new(n, axis, Tail::General, move |x| Ok(-s_of(x) * ((1.0 - p) * h(x)).exp()))
        .with_gradient(move |x| {
            let g = grad_h(x);
            let e = ((1.0 - p) * h(x)).exp();
            let grad_s = vector::scale(&g, -4.0 * alpha);
            Ok(vector::axpy(&vector::scale(&grad_s, -e), -s_of(x) * (1.0 - p) * e, &g))
        });
    let quad = polar_quadrature(n, 64).unwrap();
    let (r1, r2) = (0.5, 1.5);
    let d =
        translational_pohozaev(&u, &k, r2, 1, &quad).unwrap() - translational_pohozaev(&u, &k, r1, 1, &quad).unwrap();
    let bulk = shell_bulk(&u, &k, r1, r2, 1, &quad).unwrap();
    assert!((d - bulk.value).abs() < 1e-8, "{d} vs {}", bulk.value);
    // the full ball works too, since u is smooth at the origin
    let ball = bulk_correction(&u, &k, r1, 1, &quad).unwrap();
    let p1 = translational_pohozaev(&u, &k, r1, 1, &quad).unwrap();
    assert!((p1 - ball.value).abs() < 1e-8, "{p1} vs {}", ball.value);
    assert!(ball.exponent.unwrap() > 2.5);
}

#[test]
fn kelvin_invariance_for_deformed_delaunay() {
    let n = dim(3);
    let k = CurvatureFunction::standard(n);
    let quad = polar_quadrature(n, 64).unwrap();
    let base = Arc::new(integrate_delaunay(n, 0.2, 2, 1e-10).unwrap());
    let u = Arc::new(deform_delaunay(base, vec![0.06, 0.0, 0.0], 0.0).unwrap());
    let ku = KelvinField::new(u.clone(), KelvinParams::unit());
    let kk = k.kelvin();
    for s in [0.1, 0.37, 0.8, 1.0] {
        let a = radial_pohozaev(&ku, &kk, s, &quad).unwrap();
        let b = radial_pohozaev(&*u, &k, 1.0 / s, &quad).unwrap();
        assert!((a - b).abs() < 1e-8, "s {s}: {a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_forms_of_the_radial_invariant_agree(n in 3usize..7, t in 0.01f64..0.99) {
        let d = dim(n);
        let eps = t * yamabe_core::solutions::constant_value(d);
        let w = sphere_area(n - 1).unwrap();
        let nf = n as f64;
        let q = d.mass_exponent();
        let a = (nf - 2.0).powi(2) / 8.0 * w * (4.0 * eps.powf(q) - eps * eps);
        let b = 0.5 * w * neck_to_energy(d, eps).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn kelvin_invariance_for_bubbles(
        n in 3usize..6,
        lambda in 0.2f64..3.0,
        c in -1.0f64..1.0,
        s in 0.1f64..1.0,
    ) {
        let d = dim(n);
        let k = CurvatureFunction::standard(d);
        let quad = polar_quadrature(d, 64).unwrap();
        let mut xi = vec![0.0; n];
        xi[n - 1] = c;
        let u = Arc::new(SphericalSolution::new(d, lambda, xi).unwrap());
        let ku = KelvinField::new(u.clone(), KelvinParams::unit());
        let a = radial_pohozaev(&ku, &k.kelvin(), s, &quad).unwrap();
        let b = radial_pohozaev(&*u, &k, 1.0 / s, &quad).unwrap();
        prop_assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn plateau_of_a_constant_sequence(v in -10.0f64..10.0, len in 4usize..20) {
        prop_assert_eq!(extract_invariant(&vec![v; len], 0.0, 4, 10.0), Some(v));
    }
}
