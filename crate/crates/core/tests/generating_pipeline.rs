use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use curvekit::curvespace::{frenet_apparatus, FrenetApparatus, SampledCurve};
use curvekit::generating::*;
use curvekit::mannheim::{estimate_lambda, FrameVectorField};
use curvekit::reconstruct::{integrate_frenet, make_named_curve, InitialFrame};
use proptest::prelude::*;

fn named(family: &str, params: &[(&str, f64)], s_max: f64) -> (SampledCurve, FrenetApparatus) {
    let map: BTreeMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    integrate_frenet(&make_named_curve(family, &map, s_max).unwrap(), &InitialFrame::default(), 1e-3).unwrap()
}

#[test]
fn generated_helix_checks() {
    let (c, app) = named("helix", &[("a", 2.0), ("b", 1.0)], 5.0);
    for phi0 in [0.0, 0.3] {
        let g = build_generated(&c, &app, phi0).unwrap();
        let k = &g.checks;
        assert!(k.norm_defect < 1e-12);
        assert!(k.normal_tangent_max < 1e-4 && k.epsilon_constant, "{k:?}");
        assert!(k.second_derivative_residual < 1e-4, "{k:?}");
        let first = &g.app.samples()[0];
        assert!((first.kappa - 0.4 * phi0.cos()).abs() < 1e-12);
        assert!((first.tau - 0.4 * phi0.sin()).abs() < 1e-12);
        assert_eq!(g.curve.points()[0], c.points()[0]);
    }
}

#[test]
fn planar_base_gives_planar_or_slanted_curves() {
    let (c, app) = named("circle", &[("r", 2.0)], 4.0);
    let flat = build_generated(&c, &app, 0.0).unwrap();
    assert!(flat.checks.plane_residual < 1e-6, "{}", flat.checks.plane_residual);
    for phi0 in [0.2, 0.7, 1.2] {
        let g = build_generated(&c, &app, phi0).unwrap();
        assert!((g.checks.ratio_mean - phi0.tan()).abs() < 1e-6);
        assert!(g.checks.ratio_spread < 1e-6);
    }
}

fn closure(phase: f64, phi0: f64) -> (FrenetApparatus, GeneratedCurve) {
    let (c, app) = named("generator", &[("R", 3.0), ("tau", 1.0), ("phase", phase)], 1.2);
    let g = build_generated(&c, &app, phi0).unwrap();
    (app, g)
}

#[test]
fn cosine_base_generates_a_mannheim_curve() {
    let (_, g) = closure(0.3, 0.3);
    for (((s, kb), tb), p) in g.profile.s.iter().zip(&g.profile.s_t).zip(g.profile.tau_bar()).zip(&g.profile.phi) {
        let x = s + 0.3;
        assert!((kb - 3.0 * x.cos().powi(2)).abs() < 1e-10);
        assert!((tb - 3.0 * x.cos() * x.sin()).abs() < 1e-10);
        assert!((kb * kb + tb * tb - 3.0 * kb).abs() < 1e-10);
        assert!((p - x).abs() < 1e-12);
    }
    let est = frenet_apparatus(&g.curve).unwrap();
    let lam = estimate_lambda(&est, &FrameVectorField::tangent()).unwrap();
    assert!(lam.flatness < 1e-3, "{lam:?}");
    assert!((lam.lambda_fit - 1.0 / 3.0).abs() < 1e-3 / 3.0, "{lam:?}");
}

#[test]
fn sine_base_generates_a_b_mannheim_curve() {
    let (app, g) = closure(0.3 - FRAC_PI_2, 0.3);
    for (kb, tb) in g.profile.s_t.iter().zip(g.profile.tau_bar()) {
        assert!((kb * kb + tb * tb - 3.0 * tb).abs() < 1e-10);
    }
    let c = classify(&app, Some((0.0, 1.0))).unwrap();
    assert_eq!(c.label, Label::BMannheim);
    assert!((c.r - 3.0).abs() < 3e-3 && (c.theta0 - 0.3).abs() < 1e-3, "{c:?}");
}

#[test]
fn estimated_apparatus_classifies_like_the_analytic_one() {
    let (c, _) = named("generator", &[("R", 3.0), ("tau", 1.0), ("phase", 0.3)], 1.2);
    let est = frenet_apparatus(&c).unwrap();
    let r = classify(&est, None).unwrap();
    assert_eq!(r.label, Label::Generating);
    assert!((r.r - 3.0).abs() < 3e-3 && (r.theta0 - 0.3).abs() < 1e-3, "{r:?}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn classify_tracks_the_phase(phase in -1.2f64..0.3, r in 0.5f64..4.0) {
        let (_, app) = named("generator", &[("R", r), ("tau", 1.0), ("phase", phase)], 1.2);
        let c = classify(&app, None).unwrap();
        prop_assert_eq!(c.label, Label::Generating);
        prop_assert!((c.theta0 - phase).abs() < 1e-3);
        prop_assert!((c.r - r).abs() < 1e-3 * r);
    }

    #[test]
    fn generated_profiles_keep_the_norm(phi0 in -1.0f64..1.0, b in -1.0f64..1.0) {
        let (_, app) = named("helix", &[("a", 2.0), ("b", b)], 1.5);
        let g = s_t(&app, phi0).unwrap();
        for ((kb, tb), k) in g.s_t.iter().zip(g.tau_bar()).zip(&g.kappa) {
            prop_assert!((kb * kb + tb * tb - k * k).abs() < 1e-12);
        }
    }
}
