use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use curvekit::curvespace::*;
use curvekit::numeric::fit::rigid_alignment_gap;
use curvekit::numeric::Frame;
use curvekit::reconstruct::*;
use nalgebra::{Rotation3, Vector3};
use proptest::prelude::*;

fn profile(family: &str, params: &[(&str, f64)], s_max: f64) -> CurvatureProfile {
    let map: BTreeMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    make_named_curve(family, &map, s_max).unwrap()
}

/// Unit-speed helix (a cos(s/c), a sin(s/c), b s/c), c = √(a² + b²).
fn helix_points(a: f64, b: f64, h: f64, n: usize) -> Vec<Vector3<f64>> {
    let c = (a * a + b * b).sqrt();
    (0..n)
        .map(|k| {
            let t = k as f64 * h / c;
            Vector3::new(a * t.cos(), a * t.sin(), b * t)
        })
        .collect()
}

#[test]
fn uneven_circle_resamples_to_unit_speed() {
    // Angles bunch up and spread out along the circle.
    let angles: Vec<f64> = (0..629).map(|i| {
        let u = i as f64 / 628.0;
        TAU * (u + 0.05 * (TAU * u).sin())
    }).collect();
    let pts: Vec<_> = angles.iter().map(|a| Vector3::new(a.cos(), a.sin(), 0.0)).collect();
    let curve = resample_by_arclength(&pts, 0.01).unwrap();
    assert!((curve.len() as i64 - 629).abs() <= 1, "{}", curve.len());
    let worst = curve.points().windows(2).map(|w| ((w[1] - w[0]).norm() / curve.step() - 1.0).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-3, "{worst}");
    assert!(curve.points().iter().all(|p| (p.norm() - 1.0).abs() < 1e-6));
}

#[test]
fn closed_form_helix_apparatus() {
    let curve = SampledCurve::new(0.0, 1e-3, helix_points(2.0, 1.0, 1e-3, 5000)).unwrap();
    let app = frenet_apparatus(&curve).unwrap();
    for p in app.samples() {
        assert!((p.kappa - 0.4).abs() < 1e-5 && (p.tau - 0.2).abs() < 1e-5, "{} {}", p.kappa, p.tau);
        assert!((p.frame.handedness() - 1.0).abs() < 1e-8);
    }
    assert!(frame_orthonormality_report(&app) < 1e-8);
}

#[test]
fn curvature_error_is_fourth_order() {
    let err = |h: f64| {
        let n = (3.0 / h) as usize;
        let curve = SampledCurve::new(0.0, h, helix_points(1.0, 0.5, h, n)).unwrap();
        let app = frenet_apparatus(&curve).unwrap();
        app.samples().iter().map(|p| (p.kappa - 0.8).abs()).fold(0.0, f64::max)
    };
    let (coarse, fine) = (err(0.04), err(0.02));
    assert!(coarse / fine >= 8.0, "{coarse:e} / {fine:e}");
}

#[test]
fn integrated_frames_stay_orthonormal() {
    let (_, app) = integrate_frenet(&profile("salkowski", &[("a", 0.05)], 10.0), &InitialFrame::default(), 1e-3).unwrap();
    assert_eq!(app.len(), 10001);
    assert!(frame_orthonormality_report(&app) < 1e-8);
}

#[test]
fn helix_reconstruction_is_congruent_to_closed_form() {
    let (curve, _) = integrate_frenet(&profile("helix", &[("a", 2.0), ("b", 1.0)], 10.0), &InitialFrame::default(), 1e-3).unwrap();
    let gap = rigid_alignment_gap(curve.points(), &helix_points(2.0, 1.0, 1e-3, curve.len()));
    assert!(gap < 1e-6, "{gap:e}");
}

#[test]
fn circle_closure_converges_at_fourth_order() {
    let closure = |step: f64| {
        let (c, _) = integrate_frenet(&profile("circle", &[("r", 1.0)], TAU), &InitialFrame::default(), step).unwrap();
        (c.points()[c.len() - 1] - c.points()[0]).norm()
    };
    assert!(closure(1e-3) < 1e-8);
    let (a, b) = (closure(1e-2), closure(5e-3));
    assert!(a / b >= 8.0 || b < 1e-12, "{a:e} / {b:e}");
}

#[test]
fn salkowski_curve_has_unit_curvature() {
    let (curve, _) = integrate_frenet(&profile("salkowski", &[("a", 0.5)], 1.5), &InitialFrame::default(), 1e-3).unwrap();
    let app = frenet_apparatus(&curve).unwrap();
    assert!(app.samples().iter().all(|p| (p.kappa - 1.0).abs() < 1e-5));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn round_trip_recovers_curvatures(
        k0 in 0.2f64..6.6, k1 in 0.0f64..0.5, w in 0.2f64..3.0,
        t0 in -6.0f64..6.0, t1 in -4.0f64..4.0,
    ) {
        let kappa: ScalarFn = Arc::new(move |s: f64| k0 * (1.0 + k1 * (w * s).sin()));
        let tau: ScalarFn = Arc::new(move |s: f64| t0 + t1 * (w * s).cos());
        let (k, t) = (kappa.clone(), tau.clone());
        let p = CurvatureProfile::analytic("wavy", kappa, tau, None, 2.0).unwrap();
        let (curve, _) = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap();
        let app = frenet_apparatus(&curve).unwrap();
        for i in app.checked_indices() {
            let q = &app.samples()[i];
            prop_assert!((q.kappa - k(q.s)).abs() < 1e-5, "κ at {}: {} vs {}", q.s, q.kappa, k(q.s));
            prop_assert!((q.tau - t(q.s)).abs() < 1e-5, "τ at {}: {} vs {}", q.s, q.tau, t(q.s));
        }
        prop_assert!(frame_orthonormality_report(&app) < 1e-8);
    }

    #[test]
    fn rotated_start_rotates_the_curve(ax in -3.0f64..3.0, ay in -3.0f64..3.0, az in -3.0f64..3.0) {
        let p = profile("salkowski", &[("a", 0.3)], 3.0);
        let rot = Rotation3::from_euler_angles(ax, ay, az);
        let origin = Vector3::new(0.5, -1.0, 2.0);
        let (a, _) = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap();
        let start = InitialFrame::from_frame(rot * Vector3::zeros() + origin, Frame::from_matrix(rot.matrix())).unwrap();
        let (b, _) = integrate_frenet(&p, &start, 1e-3).unwrap();
        let gap = a.points().iter().zip(b.points()).map(|(p, q)| (rot * p + origin - q).norm()).fold(0.0, f64::max);
        prop_assert!(gap < 1e-9, "{gap:e}");
    }
}
