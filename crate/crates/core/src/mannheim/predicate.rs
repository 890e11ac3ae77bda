use std::sync::Arc;

use super::{FrameVectorField, MannheimError, OffsetFunction};
use crate::curvespace::{FrenetApparatus, KAPPA_MIN};
use crate::reconstruct::{CurvatureProfile, ProfileError, ScalarFn};

/// Guard on κ² + τ² when dividing by it.
pub const RHO2_MIN: f64 = 1e-12;

pub(crate) fn check_grid(app: &FrenetApparatus, lam: &OffsetFunction) -> Result<(), MannheimError> {
    if app.len() != lam.len() {
        return Err(MannheimError::DomainMismatch(format!("apparatus has {} samples, λ has {}", app.len(), lam.len())));
    }
    let scale = lam.s_values().last().map_or(1.0, |s| s.abs().max(1.0));
    for (k, (p, s)) in app.samples().iter().zip(lam.s_values()).enumerate() {
        if (p.s - s).abs() > 1e-9 * scale {
            return Err(MannheimError::DomainMismatch(format!("sample {k}: apparatus s = {}, λ grid s = {s}", p.s)));
        }
    }
    Ok(())
}

/// Pointwise residual of uκ − wτ = λ(κ² + τ²).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualProfile {
    pub s: Vec<f64>,
    /// Normalized residual per sample (NaN where the frame is undefined).
    pub r: Vec<f64>,
    /// Max |r| over the checked samples.
    pub max: f64,
    /// Normalizer: max |λ|(κ² + τ²) over the checked samples.
    pub scale: f64,
}

/// r(s) = (uκ − wτ − λ(κ² + τ²)) / max(|λ|(κ² + τ²)).
///
/// The normalizer makes r dimensionless, so scaling the curve leaves it
/// unchanged. Samples with one-sided stencils are excluded from `max`.
pub fn vmannheim_residual(
    app: &FrenetApparatus,
    field: &FrameVectorField,
    lam: &OffsetFunction,
) -> Result<ResidualProfile, MannheimError> {
    check_grid(app, lam)?;
    let checked = app.checked_indices();
    let raw: Vec<f64> = app
        .samples()
        .iter()
        .zip(lam.values())
        .map(|(p, &l)| {
            let (u, _, w) = field.at(p.s);
            u * p.kappa - w * p.tau - l * (p.kappa * p.kappa + p.tau * p.tau)
        })
        .collect();
    let mut scale = checked
        .iter()
        .map(|&k| {
            let p = &app.samples()[k];
            lam.values()[k].abs() * (p.kappa * p.kappa + p.tau * p.tau)
        })
        .fold(0.0, f64::max);
    if scale == 0.0 {
        // λ ≡ 0: fall back to the size of the left-hand side.
        scale = checked
            .iter()
            .map(|&k| {
                let p = &app.samples()[k];
                let (u, _, w) = field.at(p.s);
                (u * p.kappa - w * p.tau).abs()
            })
            .fold(0.0, f64::max);
    }
    if scale == 0.0 {
        scale = 1.0;
    }
    let r: Vec<f64> = raw.iter().map(|x| x / scale).collect();
    let max = checked.iter().map(|&k| r[k].abs()).fold(0.0, f64::max);
    Ok(ResidualProfile { s: app.s_values(), r, max, scale })
}

/// Constant λ fitted to a v ≡ 0 field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaEstimate {
    pub lambda_fit: f64,
    /// max |λ(s) − mean| / |mean|.
    pub flatness: f64,
}

/// λ(s) = (uκ − wτ)/(κ² + τ²) over the checked samples; mean and spread.
pub fn estimate_lambda(app: &FrenetApparatus, field: &FrameVectorField) -> Result<LambdaEstimate, MannheimError> {
    if !field.v_vanishes_on(&app.s_values()) {
        return Err(MannheimError::NotApplicable("λ is constant only when v ≡ 0".into()));
    }
    let checked = app.checked_indices();
    if checked.is_empty() {
        return Err(MannheimError::DomainMismatch("no checked samples".into()));
    }
    let mut lambdas = Vec::with_capacity(checked.len());
    for &k in &checked {
        let p = &app.samples()[k];
        let rho2 = p.kappa * p.kappa + p.tau * p.tau;
        if !(rho2 >= RHO2_MIN) {
            return Err(MannheimError::DivideByZero { index: k });
        }
        let (u, _, w) = field.at(p.s);
        lambdas.push((u * p.kappa - w * p.tau) / rho2);
    }
    let mean = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
    let spread = lambdas.iter().map(|l| (l - mean).abs()).fold(0.0, f64::max);
    Ok(LambdaEstimate { lambda_fit: mean, flatness: spread / mean.abs() })
}

/// Max residuals of the two angular identities, in units of 1/λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularResidual {
    pub tangent: f64,
    pub binormal: f64,
}

/// With θ = atan2(τ, κ) and θ₀ = atan2(w, u), checks
/// 2uκ = (1/λ)[u² + u cos(2θ + θ₀)] and 2wτ = (1/λ)[−w² + w sin(2θ + θ₀)].
pub fn angular_check(app: &FrenetApparatus, u: f64, v: f64, w: f64, lambda: f64) -> Result<AngularResidual, MannheimError> {
    if v.abs() > super::field::UNIT_TOL {
        return Err(MannheimError::NotApplicable("angular form needs v ≡ 0".into()));
    }
    if ((u * u + w * w) - 1.0).abs() > super::field::UNIT_TOL {
        return Err(MannheimError::NotUnit { s: 0.0, norm: (u * u + w * w).sqrt() });
    }
    if lambda.abs() < super::partner::LAMBDA_MIN {
        return Err(MannheimError::SingularOffset { index: 0 });
    }
    let theta0 = w.atan2(u);
    let inv = 1.0 / lambda;
    let mut out = AngularResidual { tangent: 0.0, binormal: 0.0 };
    for k in app.checked_indices() {
        let p = &app.samples()[k];
        let phase = 2.0 * p.tau.atan2(p.kappa) + theta0;
        let r1 = 2.0 * u * p.kappa - inv * (u * u + u * phase.cos());
        let r2 = 2.0 * w * p.tau - inv * (-w * w + w * phase.sin());
        out.tangent = out.tangent.max(r1.abs() / inv.abs());
        out.binormal = out.binormal.max(r2.abs() / inv.abs());
    }
    Ok(out)
}

/// Profile satisfying uκ − wτ = λ(κ² + τ²) exactly for the given field.
///
/// With c = √(u² + w²), ψ = atan2(w, u) and a free angle φ(s) ∈ (0, π/2):
/// ρ = c sin φ / λ, κ = ρ sin(φ + ψ), τ = ρ cos(φ + ψ). κ > κ_min is
/// checked on a grid of spacing ≤ `check_step`.
pub fn v_mannheim_profile(
    field: &FrameVectorField,
    lambda: ScalarFn,
    phi: ScalarFn,
    s_max: f64,
    check_step: f64,
) -> Result<CurvatureProfile, ProfileError> {
    let polar = {
        let field = field.clone();
        let lambda = lambda.clone();
        let phi = phi.clone();
        Arc::new(move |s: f64| {
            let (u, _, w) = field.at(s);
            let (c, psi) = ((u * u + w * w).sqrt(), w.atan2(u));
            let f = phi(s);
            (c * f.sin() / lambda(s), f + psi)
        })
    };
    let p2 = polar.clone();
    let kappa: ScalarFn = Arc::new(move |s| {
        let (rho, a) = polar(s);
        rho * a.sin()
    });
    let tau: ScalarFn = Arc::new(move |s| {
        let (rho, a) = p2(s);
        rho * a.cos()
    });
    let (grid, _) = crate::numeric::uniform_grid(s_max, check_step);
    for s in grid {
        let k = kappa(s);
        if !(k > KAPPA_MIN) {
            return Err(ProfileError::CurvatureVanishes { s, kappa: k, floor: KAPPA_MIN });
        }
    }
    CurvatureProfile::analytic("v_mannheim", kappa, tau, None, s_max)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::reconstruct::{integrate_frenet, make_named_curve, mannheim_profile, InitialFrame, MannheimVariant};

    fn named(family: &str, params: &[(&str, f64)], s_max: f64) -> FrenetApparatus {
        let map: BTreeMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let profile = make_named_curve(family, &map, s_max).unwrap();
        integrate_frenet(&profile, &InitialFrame::default(), 1e-3).unwrap().1
    }

    fn constant_lambda(app: &FrenetApparatus, l: f64) -> OffsetFunction {
        OffsetFunction::constant(l, &app.s_values())
    }

    #[test]
    fn circle_and_helix_residuals() {
        let circle = named("circle", &[("r", 1.0)], 3.0);
        let t = FrameVectorField::tangent();
        assert!(vmannheim_residual(&circle, &t, &constant_lambda(&circle, 1.0)).unwrap().max < 1e-15);
        let helix = named("helix", &[("a", 2.0), ("b", 1.0)], 5.0);
        assert!(vmannheim_residual(&helix, &t, &constant_lambda(&helix, 2.0)).unwrap().max < 1e-14);
        // |2/5 − 1/5| / (1 · 1/5)
        let wrong = vmannheim_residual(&helix, &t, &constant_lambda(&helix, 1.0)).unwrap();
        assert!((wrong.max - 1.0).abs() < 1e-12, "{}", wrong.max);
    }

    #[test]
    fn residual_rejects_mismatched_grid() {
        let circle = named("circle", &[("r", 1.0)], 1.0);
        let lam = OffsetFunction::constant(1.0, &[0.0, 0.5, 1.0]);
        assert!(matches!(
            vmannheim_residual(&circle, &FrameVectorField::tangent(), &lam),
            Err(MannheimError::DomainMismatch(_))
        ));
    }

    #[test]
    fn lambda_estimates() {
        let t = FrameVectorField::tangent();
        let circle = estimate_lambda(&named("circle", &[("r", 3.0)], 2.0), &t).unwrap();
        assert!((circle.lambda_fit - 3.0).abs() < 1e-12 && circle.flatness < 1e-12);
        let helix = estimate_lambda(&named("helix", &[("a", 2.0), ("b", 1.0)], 5.0), &t).unwrap();
        assert!((helix.lambda_fit - 2.0).abs() < 1e-12);
        let p = mannheim_profile(4.0, Arc::new(|s| 0.4 * s), MannheimVariant::T, 2.0, 1e-3).unwrap();
        let app = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap().1;
        let m = estimate_lambda(&app, &t).unwrap();
        assert!((m.lambda_fit - 0.25).abs() < 1e-6 && m.flatness < 1e-3);
    }

    #[test]
    fn lambda_estimate_needs_vanishing_v() {
        let app = named("circle", &[("r", 1.0)], 1.0);
        let field = FrameVectorField::constant(0.6, 0.8, 0.0).unwrap();
        assert!(matches!(estimate_lambda(&app, &field), Err(MannheimError::NotApplicable(_))));
    }

    #[test]
    fn lambda_estimate_guards_vanishing_curvatures() {
        let app = named("circle", &[("r", 1.0)], 1.0);
        let n = app.len();
        let flat = app.with_curvatures(&vec![0.0; n], &vec![0.0; n]);
        assert!(matches!(estimate_lambda(&flat, &FrameVectorField::tangent()), Err(MannheimError::DivideByZero { .. })));
    }

    #[test]
    fn angular_identities() {
        let helix = named("helix", &[("a", 2.0), ("b", 1.0)], 5.0);
        let ok = angular_check(&helix, 1.0, 0.0, 0.0, 2.0).unwrap();
        assert!(ok.tangent < 1e-10 && ok.binormal < 1e-10);
        let circle = named("circle", &[("r", 2.5)], 2.0);
        let ok = angular_check(&circle, 1.0, 0.0, 0.0, 2.5).unwrap();
        assert!(ok.tangent < 1e-12 && ok.binormal < 1e-12);
        let bad = angular_check(&helix, 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(bad.tangent > 0.1);
        assert!(matches!(angular_check(&helix, 0.6, 0.8, 0.0, 1.0), Err(MannheimError::NotApplicable(_))));
    }

    #[test]
    fn angular_identities_with_binormal_component() {
        // uκ − wτ = λ(κ² + τ²) for a general constant (u, w) pair.
        let (u, w) = (0.8, 0.6);
        let field = FrameVectorField::constant(u, 0.0, w).unwrap();
        let p = v_mannheim_profile(&field, Arc::new(|_| 0.5), Arc::new(|s| 0.5 + 0.2 * s), 2.0, 1e-3).unwrap();
        let app = integrate_frenet(&p, &InitialFrame::default(), 1e-3).unwrap().1;
        assert!(vmannheim_residual(&app, &field, &constant_lambda(&app, 0.5)).unwrap().max < 1e-13);
        let a = angular_check(&app, u, 0.0, w, 0.5).unwrap();
        assert!(a.tangent < 1e-12 && a.binormal < 1e-12, "{a:?}");
    }

    #[test]
    fn residual_is_scale_free() {
        let helix = named("helix", &[("a", 2.0), ("b", 1.0)], 5.0);
        let t = FrameVectorField::tangent();
        let c = 3.0;
        let scaled = helix.with_curvatures(
            &helix.kappa().iter().map(|k| k / c).collect::<Vec<_>>(),
            &helix.tau().iter().map(|k| k / c).collect::<Vec<_>>(),
        );
        let a = vmannheim_residual(&helix, &t, &constant_lambda(&helix, 1.0)).unwrap().max;
        let b = vmannheim_residual(&scaled, &t, &constant_lambda(&scaled, c)).unwrap().max;
        assert!((a - b).abs() < 1e-12);
        assert!((estimate_lambda(&scaled, &t).unwrap().lambda_fit - 2.0 * c).abs() < 1e-12);
    }
}
