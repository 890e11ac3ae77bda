use serde::{Deserialize, Serialize};

use super::profile::grid_step;
use super::{generated_curvatures, s_t, GeneratingError, GeneratingProfile};
use crate::curvespace::{FrenetApparatus, SampledCurve};
use crate::numeric::fit::plane_residual;
use crate::numeric::stencil::derivative;
use crate::numeric::Frame;
use crate::reconstruct::{integrate_frenet, InitialFrame};

/// Scalar checks on a generated curve K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratedChecks {
    pub phi0: f64,
    /// max ‖N̄ × T‖.
    pub normal_tangent_max: f64,
    /// Sign of ⟨N̄, T⟩ at the first sample.
    pub epsilon: i8,
    pub epsilon_constant: bool,
    /// max ‖β″ − S_T γ′‖, both sides by finite differences.
    pub second_derivative_residual: f64,
    /// max |κ̄² + τ̄² − κ²|.
    pub norm_defect: f64,
    /// Max distance of K from its best-fit plane.
    pub plane_residual: f64,
    /// Mean and spread (max − min) of τ̄/κ̄.
    pub ratio_mean: f64,
    pub ratio_spread: f64,
}

#[derive(Debug, Clone)]
pub struct GeneratedCurve {
    pub curve: SampledCurve,
    pub app: FrenetApparatus,
    pub profile: GeneratingProfile,
    pub checks: GeneratedChecks,
}

/// K from M: integrates (κ̄, τ̄) on the base arc-length grid from the frame
/// T̄ = −cos φ₀ N + sin φ₀ B, N̄ = T, B̄ = sin φ₀ N + cos φ₀ B at γ(0), so
/// that N̄ = T along the whole curve.
pub fn build_generated(base: &SampledCurve, app: &FrenetApparatus, phi0: f64) -> Result<GeneratedCurve, GeneratingError> {
    let h = grid_step(app)?;
    if base.len() != app.len() {
        return Err(GeneratingError::Apparatus(format!("curve has {} samples, apparatus {}", base.len(), app.len())));
    }
    let profile = s_t(app, phi0)?;
    let kb = generated_curvatures(app, phi0)?;
    let f0 = app.samples()[0].frame;
    let (c, s) = (phi0.cos(), phi0.sin());
    let frame = Frame { t: f0.b * s - f0.n * c, n: f0.t, b: f0.n * s + f0.b * c }.orthonormalized();
    let (curve, gapp) = integrate_frenet(&kb, &InitialFrame::from_frame(base.points()[0], frame)?, h)?;

    let mut normal_tangent_max: f64 = 0.0;
    let mut epsilon = 0i8;
    let mut epsilon_constant = true;
    for (g, b) in gapp.samples().iter().zip(app.samples()) {
        normal_tangent_max = normal_tangent_max.max(g.frame.n.cross(&b.frame.t).norm());
        let sign = if g.frame.n.dot(&b.frame.t) >= 0.0 { 1 } else { -1 };
        if epsilon == 0 {
            epsilon = sign;
        } else if sign != epsilon {
            epsilon_constant = false;
        }
    }

    let beta2 = derivative(&derivative(curve.points(), h), h);
    let gamma1 = derivative(base.points(), h);
    let second_derivative_residual = beta2
        .iter()
        .zip(&gamma1)
        .zip(&profile.s_t)
        .map(|((b2, g1), st)| (b2 - g1 * *st).norm())
        .fold(0.0, f64::max);

    let tau_bar = profile.tau_bar();
    let norm_defect = profile
        .s_t
        .iter()
        .zip(&tau_bar)
        .zip(&profile.kappa)
        .map(|((a, b), k)| (a * a + b * b - k * k).abs())
        .fold(0.0, f64::max);
    let ratios: Vec<f64> = tau_bar.iter().zip(&profile.s_t).map(|(t, k)| t / k).collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let checks = GeneratedChecks {
        phi0,
        normal_tangent_max,
        epsilon,
        epsilon_constant,
        second_derivative_residual,
        norm_defect,
        plane_residual: plane_residual(curve.points()),
        ratio_mean: ratios.iter().sum::<f64>() / ratios.len() as f64,
        ratio_spread: hi - lo,
    };
    Ok(GeneratedCurve { curve, app: gapp, profile, checks })
}

