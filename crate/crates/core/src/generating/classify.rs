use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use super::profile::grid_step;
use super::GeneratingError;
use crate::curvespace::FrenetApparatus;
use crate::numeric::fit::fit_cos_sin;
use crate::numeric::quadrature::cumulative;

/// Relative fit residual below which a label is assigned.
pub const FIT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Mannheim,
    BMannheim,
    VMannheim,
    Generating,
    None,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Mannheim => "mannheim",
            Label::BMannheim => "b_mannheim",
            Label::VMannheim => "v_mannheim",
            Label::Generating => "generating",
            Label::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub label: Label,
    #[serde(rename = "R")]
    pub r: f64,
    /// Phase of the cosine form, or of the sine form for `b_mannheim`.
    pub theta0: f64,
    /// max |κ − fit| / max |κ|.
    pub fit_residual: f64,
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// Fits κ = A cos Φ + B sin Φ with Φ = ∫τ, i.e. κ = R cos(Φ + θ₀) with
/// R = √(A² + B²) and θ₀ = atan2(−B, A).
///
/// The field selects the statement being tested: none for the generating
/// curve definition, (1, 0) for Mannheim, (0, 1) for B-Mannheim (phase
/// reported for R sin(Φ + θ₀)), anything else for V-Mannheim.
pub fn classify(app: &FrenetApparatus, field: Option<(f64, f64)>) -> Result<ClassificationResult, GeneratingError> {
    let h = grid_step(app)?;
    let kappa = app.kappa();
    let phi = cumulative(&app.tau(), h, 0.0);
    let (a, b) = fit_cos_sin(&phi, &kappa);
    let r = a.hypot(b);
    let theta0 = (-b).atan2(a);
    let scale = kappa.iter().map(|k| k.abs()).fold(0.0, f64::max);
    let worst = kappa
        .iter()
        .zip(&phi)
        .map(|(k, p)| (k - a * p.cos() - b * p.sin()).abs())
        .fold(0.0, f64::max);
    let fit_residual = if scale > 0.0 { worst / scale } else { f64::INFINITY };
    let (label, theta0) = match field {
        None => (Label::Generating, theta0),
        Some((u, w)) if u == 1.0 && w == 0.0 => (Label::Mannheim, theta0),
        Some((u, w)) if u == 0.0 && w == 1.0 => (Label::BMannheim, wrap(theta0 + FRAC_PI_2)),
        Some(_) => (Label::VMannheim, theta0),
    };
    let label = if fit_residual < FIT_TOL { label } else { Label::None };
    Ok(ClassificationResult { label, r, theta0, fit_residual })
}
