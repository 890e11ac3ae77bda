//! V-Mannheim predicates, partner construction and the checks that tie a
//! curve to its partner.

mod field;
mod ode;
mod offset;
mod partner;
mod predicate;
mod report;

use thiserror::Error;

pub use field::{FrameVectorField, UNIT_TOL};
pub use ode::{partner_ode_residual, OdeResidual, SignConvention, V_MAX};
pub use offset::{lambda_from_v, OffsetFunction};
pub use partner::{
    build_partner, partner_apparatus, speed_ratio_residual, theta_rate_check, verify_collinear, Collinearity,
    Correspondence, Partner, PartnerApparatus, ThetaRate, DEGENERATE_FRACTION, LAMBDA_MIN, SPEED_FLOOR,
};
pub use predicate::{
    angular_check, estimate_lambda, v_mannheim_profile, vmannheim_residual, AngularResidual, LambdaEstimate,
    ResidualProfile, RHO2_MIN,
};
pub use report::{check_partner, check_predicate, LambdaChoice, MannheimReport, PartnerCheck, Tolerances};

use crate::curvespace::CurveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MannheimError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("field is not unit length at s = {s} (|V| = {norm})")]
    NotUnit { s: f64, norm: f64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("κ² + τ² vanishes at sample {index}")]
    DivideByZero { index: usize },
    #[error("curvature vanishes at sample {index} (κ = {kappa:e}); N is undefined")]
    VanishingCurvature { index: usize, kappa: f64 },
    #[error("partner is degenerate: {:.1}% of samples are non-regular or have vanishing curvature", fraction * 100.0)]
    DegeneratePartner { fraction: f64 },
    #[error("offset λ is (nearly) zero at sample {index}")]
    SingularOffset { index: usize },
    #[error("|v| reaches 1 at sample {index}")]
    VTooLarge { index: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}
