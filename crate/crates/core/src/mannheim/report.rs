use serde::{Deserialize, Serialize};

use super::{
    angular_check, build_partner, estimate_lambda, partner_apparatus, partner_ode_residual, speed_ratio_residual,
    theta_rate_check, verify_collinear, vmannheim_residual, AngularResidual, FrameVectorField, MannheimError,
    OffsetFunction, Partner, PartnerApparatus, SignConvention,
};
use crate::curvespace::{FrenetApparatus, Provenance, SampledCurve};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tol_pred: f64,
    pub tol_col: f64,
    pub tol_ode: f64,
    pub tol_speed: f64,
}

impl Tolerances {
    /// 1e-6 on the predicate for exact (κ, τ), 1e-4 for estimated ones.
    pub fn for_provenance(p: Provenance) -> Self {
        let tol_pred = match p {
            Provenance::Analytic => 1e-6,
            Provenance::Estimated => 1e-4,
        };
        Self { tol_pred, tol_col: 1e-4, tol_ode: 1e-3, tol_speed: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LambdaChoice {
    /// Fit a constant λ (v ≡ 0 only).
    Auto,
    Offset(OffsetFunction),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MannheimReport {
    pub verdict: bool,
    pub lambda_fit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flatness: Option<f64>,
    pub residual_max: f64,
    pub collinearity_max: Option<f64>,
    pub epsilon: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_flips: Option<usize>,
    pub sign_convention: Option<SignConvention>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_residual_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_residual_other: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speed_ratio_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_rate_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_rate_sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular_tangent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular_binormal: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub theta_profile: Vec<(f64, f64)>,
    pub provenance: Provenance,
    pub tolerances: Tolerances,
}

fn resolve(app: &FrenetApparatus, field: &FrameVectorField, lam: LambdaChoice) -> Result<(OffsetFunction, f64, Option<f64>), MannheimError> {
    match lam {
        LambdaChoice::Auto => {
            let est = estimate_lambda(app, field)?;
            Ok((OffsetFunction::constant(est.lambda_fit, &app.s_values()), est.lambda_fit, Some(est.flatness)))
        }
        LambdaChoice::Offset(off) => {
            let l0 = off.lambda0();
            Ok((off, l0, None))
        }
    }
}

fn angular(app: &FrenetApparatus, field: &FrameVectorField, lam: &OffsetFunction) -> Option<AngularResidual> {
    let (u, v, w) = field.constant_components()?;
    if lam.slope().iter().any(|&d| d != 0.0) {
        return None;
    }
    angular_check(app, u, v, w, lam.lambda0()).ok()
}

/// Predicate-only report: residual, fitted λ and the angular identities.
/// Collinearity fields stay empty and the verdict rests on the residual.
pub fn check_predicate(
    app: &FrenetApparatus,
    field: &FrameVectorField,
    lam: LambdaChoice,
    tol: Tolerances,
) -> Result<(MannheimReport, OffsetFunction), MannheimError> {
    let (lam, lambda_fit, flatness) = resolve(app, field, lam)?;
    let residual = vmannheim_residual(app, field, &lam)?;
    let ang = angular(app, field, &lam);
    let report = MannheimReport {
        verdict: residual.max < tol.tol_pred,
        lambda_fit,
        flatness,
        residual_max: residual.max,
        collinearity_max: None,
        epsilon: None,
        sign_flips: None,
        sign_convention: None,
        ode_residual_max: None,
        ode_residual_other: None,
        speed_ratio_residual: None,
        theta_rate_residual: None,
        theta_rate_sign: None,
        angular_tangent: ang.map(|a| a.tangent),
        angular_binormal: ang.map(|a| a.binormal),
        theta_profile: Vec::new(),
        provenance: app.provenance(),
        tolerances: tol,
    };
    Ok((report, lam))
}

#[derive(Debug, Clone)]
pub struct PartnerCheck {
    pub report: MannheimReport,
    pub partner: Partner,
    pub partner_app: PartnerApparatus,
    pub offset: OffsetFunction,
}

/// Full pipeline: predicate, partner construction, collinearity, partner
/// torsion equation, speed ratio and the rate of the T̄ angle.
pub fn check_partner(
    curve: &SampledCurve,
    app: &FrenetApparatus,
    field: &FrameVectorField,
    lam: LambdaChoice,
    tol: Tolerances,
) -> Result<PartnerCheck, MannheimError> {
    let (mut report, lam) = check_predicate(app, field, lam, tol)?;
    let partner = build_partner(curve, app, field, &lam)?;
    let papp = partner_apparatus(&partner)?;
    let corr = &papp.correspondence;
    let col = verify_collinear(app, &papp.app, corr)?;
    let ode = partner_ode_residual(&papp.app, app, &lam, field, corr)?;
    let speed = speed_ratio_residual(&papp.app, &lam, field, corr, app)?;
    let theta = theta_rate_check(app, &papp.app, corr)?;
    report.verdict = report.residual_max < tol.tol_pred && col.max < tol.tol_col && col.sign_flips == 0;
    report.collinearity_max = Some(col.max);
    report.epsilon = Some(col.epsilon);
    report.sign_flips = Some(col.sign_flips);
    report.sign_convention = Some(ode.sign_convention);
    report.ode_residual_max = Some(ode.residual_max);
    report.ode_residual_other = Some(ode.residual_other);
    report.speed_ratio_residual = Some(speed);
    report.theta_rate_residual = Some(theta.residual);
    report.theta_rate_sign = Some(theta.sign);
    report.theta_profile = theta.theta;
    Ok(PartnerCheck { report, partner, partner_app: papp, offset: lam })
}
