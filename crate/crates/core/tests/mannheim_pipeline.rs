use std::sync::Arc;

use curvekit::curvespace::{frenet_apparatus, FrenetApparatus, Provenance, SampledCurve};
use curvekit::mannheim::*;
use curvekit::reconstruct::{integrate_frenet, mannheim_profile, CurvatureProfile, InitialFrame, MannheimVariant, ScalarFn};
use proptest::prelude::*;

fn t_curve(rate: f64, phase: f64, s_max: f64, step: f64) -> (SampledCurve, FrenetApparatus) {
    let p = mannheim_profile(4.0, Arc::new(move |s| phase + rate * s), MannheimVariant::T, s_max, 1e-3).unwrap();
    integrate_frenet(&p, &InitialFrame::default(), step).unwrap()
}

fn constant(app: &FrenetApparatus, l: f64) -> LambdaChoice {
    LambdaChoice::Offset(OffsetFunction::constant(l, &app.s_values()))
}

fn analytic() -> Tolerances {
    Tolerances::for_provenance(Provenance::Analytic)
}

#[test]
fn tangent_partner_passes_every_check() {
    let mut conventions = Vec::new();
    for step in [1e-3, 5e-4] {
        let (c, app) = t_curve(0.4, 0.0, 2.0, step);
        let r = check_partner(&c, &app, &FrameVectorField::tangent(), constant(&app, 0.25), analytic()).unwrap().report;
        assert!(r.verdict);
        assert!(r.residual_max < 1e-12);
        assert!(r.collinearity_max.unwrap() < 1e-4 && r.sign_flips == Some(0));
        assert!(r.ode_residual_max.unwrap() < 1e-3 && r.ode_residual_other.unwrap() > 1e-3);
        assert!(r.speed_ratio_residual.unwrap() < 1e-3);
        assert!(r.theta_rate_residual.unwrap() < 1e-3);
        conventions.push(r.sign_convention.unwrap());
    }
    assert_eq!(conventions[0], conventions[1]);
}

#[test]
fn wrong_offset_breaks_collinearity() {
    let (c, app) = t_curve(0.4, 0.0, 2.0, 1e-3);
    let r = check_partner(&c, &app, &FrameVectorField::tangent(), constant(&app, 0.30), analytic()).unwrap().report;
    assert!(!r.verdict);
    assert!(r.collinearity_max.unwrap() > 1e-2);
}

#[test]
fn binormal_partner_with_fitted_offset() {
    let p = mannheim_profile(2.0, Arc::new(|s| 0.3 + 0.4 * s), MannheimVariant::B, 2.0, 1e-3).unwrap();
    let (c, app) = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap();
    let r = check_partner(&c, &app, &FrameVectorField::binormal(), LambdaChoice::Auto, analytic()).unwrap().report;
    // uκ − wτ = −τ = λ(κ² + τ²) with κ² + τ² = 2τ
    assert!((r.lambda_fit + 0.5).abs() < 1e-9, "{}", r.lambda_fit);
    assert!(r.verdict && r.collinearity_max.unwrap() < 1e-4);
    assert!(r.ode_residual_max.unwrap() < 1e-3);
}

fn v_case(psi: ScalarFn) -> (SampledCurve, FrenetApparatus, FrameVectorField, OffsetFunction) {
    let v: ScalarFn = Arc::new(|s: f64| 0.1 * s.sin());
    let field = FrameVectorField::with_varying_normal(v.clone(), psi);
    let lambda: ScalarFn = Arc::new(|s: f64| 0.5 + 0.1 * (s.cos() - 1.0));
    let p = v_mannheim_profile(&field, lambda, Arc::new(|s: f64| 0.4 + 0.1 * s), 3.0, 1e-3).unwrap();
    let (c, app) = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap();
    let off = lambda_from_v(&*v, 0.5, 3.0, 1e-3);
    (c, app, field, off)
}

#[test]
fn varying_field_partners() {
    for psi in [0.0, 0.3] {
        for rate in [0.0, 0.2, -0.2] {
            let (c, app, field, off) = v_case(Arc::new(move |s| psi + rate * s));
            let r = check_partner(&c, &app, &field, LambdaChoice::Offset(off), analytic()).unwrap().report;
            assert!(r.verdict, "ψ = {psi} + {rate}s: {r:?}");
            assert!(r.collinearity_max.unwrap() < 1e-4);
            assert!(r.ode_residual_max.unwrap() < 1e-3, "ψ = {psi} + {rate}s: {:?}", r.ode_residual_max);
            assert!(r.speed_ratio_residual.unwrap() < 1e-3);
        }
    }
}

#[test]
fn scaled_curvature_breaks_both_tests() {
    let p = mannheim_profile(4.0, Arc::new(|s| 0.4 * s), MannheimVariant::T, 2.0, 1e-3).unwrap();
    let k: ScalarFn = Arc::new({
        let p = p.clone();
        move |s| 1.05 * p.kappa(s).unwrap()
    });
    let t: ScalarFn = Arc::new(move |s| p.tau(s).unwrap());
    let bent = CurvatureProfile::analytic("bent", k, t, None, 2.0).unwrap();
    let (c, app) = integrate_frenet(&bent, &InitialFrame::default(), 1e-3).unwrap();
    let r = check_partner(&c, &app, &FrameVectorField::tangent(), constant(&app, 0.25), analytic()).unwrap().report;
    assert!(r.residual_max > 1e-2 && r.collinearity_max.unwrap() > 1e-2, "{r:?}");
}

#[test]
fn perturbed_partner_torsion_is_detected() {
    let (c, app) = t_curve(0.4, 0.0, 2.0, 1e-3);
    let field = FrameVectorField::tangent();
    let lam = OffsetFunction::constant(0.25, &app.s_values());
    let partner = build_partner(&c, &app, &field, &lam).unwrap();
    let papp = partner_apparatus(&partner).unwrap();
    let corr = &papp.correspondence;
    let clean = partner_ode_residual(&papp.app, &app, &lam, &field, corr).unwrap();
    let tau: Vec<f64> = papp.app.tau().iter().map(|t| 1.1 * t).collect();
    let bumped = papp.app.with_curvatures(&papp.app.kappa(), &tau);
    let noisy = partner_ode_residual(&bumped, &app, &lam, &field, corr).unwrap();
    assert!(noisy.residual_max > 10.0 * clean.residual_max, "{} vs {}", noisy.residual_max, clean.residual_max);
}

#[test]
fn estimated_apparatus_passes_the_loose_predicate() {
    let (c, _) = t_curve(0.4, 0.0, 2.0, 1e-3);
    let app = frenet_apparatus(&c).unwrap();
    let tol = Tolerances::for_provenance(app.provenance());
    let (r, _) = check_predicate(&app, &FrameVectorField::tangent(), LambdaChoice::Auto, tol).unwrap();
    assert!(r.verdict && r.residual_max < 1e-4, "{}", r.residual_max);
    assert!((r.lambda_fit - 0.25).abs() < 1e-5);
}

#[test]
fn scaling_the_curve_scales_lambda() {
    let (c, _) = t_curve(0.4, 0.3, 2.0, 1e-3);
    let base = frenet_apparatus(&c).unwrap();
    let tol = Tolerances::for_provenance(Provenance::Estimated);
    let (r0, _) = check_predicate(&base, &FrameVectorField::tangent(), LambdaChoice::Auto, tol).unwrap();
    for factor in [0.5, 3.0] {
        let app = frenet_apparatus(&c.scaled(factor)).unwrap();
        let (r, _) = check_predicate(&app, &FrameVectorField::tangent(), LambdaChoice::Auto, tol).unwrap();
        assert!((r.lambda_fit / r0.lambda_fit - factor).abs() < 1e-6 * factor);
        assert_eq!(r.verdict, r0.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    // A constant angle gives a helix, whose partner is the axis line.
    #[test]
    fn mannheim_profiles_have_collinear_partners(
        rate in 0.1f64..0.3,
        flip in proptest::bool::ANY,
        phase in 0.1f64..1.2,
        r in 1.0f64..4.0,
    ) {
        let rate = if flip { -rate } else { rate };
        let p = mannheim_profile(r, Arc::new(move |s| phase + rate * s), MannheimVariant::T, 1.0, 1e-3).unwrap();
        let (c, app) = integrate_frenet(&p, &InitialFrame::default(), 2e-3).unwrap();
        let rep = check_partner(&c, &app, &FrameVectorField::tangent(), constant(&app, 1.0 / r), analytic()).unwrap().report;
        prop_assert!(rep.verdict);
        prop_assert!(rep.collinearity_max.unwrap() < 1e-4);
        prop_assert_eq!(rep.sign_flips, Some(0));
        prop_assert!(rep.speed_ratio_residual.unwrap() < 1e-3);
    }

    #[test]
    fn offset_slope_is_minus_v(a in -0.5f64..0.5, b in -1.0f64..1.0, l0 in -2.0f64..2.0) {
        let off = lambda_from_v(&move |s: f64| a * (s + b).sin(), l0, 2.0, 1e-3);
        prop_assert_eq!(off.values()[0], l0);
        prop_assert!(off.slope_defect() < 1e-9);
    }
}

#[test]
fn cusp_between_samples_is_masked() {
    // θ = 0.1 − 0.21 s vanishes at s ≈ 0.476, off the 2e-3 grid.
    let p = mannheim_profile(1.0, Arc::new(|s| 0.1 - 0.21 * s), MannheimVariant::T, 1.0, 1e-3).unwrap();
    let (c, app) = integrate_frenet(&p, &InitialFrame::default(), 2e-3).unwrap();
    let check = check_partner(&c, &app, &FrameVectorField::tangent(), constant(&app, 1.0), analytic()).unwrap();
    let undefined = check.partner_app.app.samples().iter().filter(|p| !p.is_defined()).count();
    assert!(undefined > 0 && undefined < 20, "{undefined}");
    let r = check.report;
    assert!(r.verdict && r.collinearity_max.unwrap() < 1e-4 && r.sign_flips == Some(0));
    assert!(r.ode_residual_max.unwrap() < 1e-3);
}
