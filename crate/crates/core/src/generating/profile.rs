use super::GeneratingError;
use crate::curvespace::{FrenetApparatus, KAPPA_MIN};
use crate::numeric::quadrature::cumulative;
use crate::reconstruct::CurvatureProfile;

/// S_T(s) = κ(s) cos φ(s) with φ(s) = ∫₀ˢ τ du + φ₀, on the apparatus grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingProfile {
    pub phi0: f64,
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub phi: Vec<f64>,
    pub s_t: Vec<f64>,
}

impl GeneratingProfile {
    /// κ sin φ, the torsion of the generated curve.
    pub fn tau_bar(&self) -> Vec<f64> {
        self.kappa.iter().zip(&self.phi).map(|(k, p)| k * p.sin()).collect()
    }
}

pub(crate) fn grid_step(app: &FrenetApparatus) -> Result<f64, GeneratingError> {
    if let Some(k) = app.samples().iter().position(|p| !p.is_defined()) {
        return Err(GeneratingError::Apparatus(format!("sample {k} is undefined")));
    }
    app.uniform_step().ok_or_else(|| GeneratingError::Apparatus("grid is not uniform".into()))
}

pub fn s_t(app: &FrenetApparatus, phi0: f64) -> Result<GeneratingProfile, GeneratingError> {
    let h = grid_step(app)?;
    let kappa = app.kappa();
    let phi: Vec<f64> = cumulative(&app.tau(), h, 0.0).into_iter().map(|x| x + phi0).collect();
    let s_t = kappa.iter().zip(&phi).map(|(k, p)| k * p.cos()).collect();
    Ok(GeneratingProfile { phi0, s: app.s_values(), kappa, phi, s_t })
}

/// (κ̄, τ̄) = (κ cos φ, κ sin φ) as a tabulated profile on the apparatus grid.
///
/// κ̄ must stay above κ_min, otherwise the generated curve has no principal
/// normal where cos φ changes sign.
pub fn generated_curvatures(app: &FrenetApparatus, phi0: f64) -> Result<CurvatureProfile, GeneratingError> {
    let g = s_t(app, phi0)?;
    if let Some(k) = g.s_t.iter().position(|&kb| !(kb > KAPPA_MIN)) {
        return Err(GeneratingError::CurvatureSignChange { s: g.s[k], kappa_bar: g.s_t[k] });
    }
    Ok(CurvatureProfile::tabulated(&g.s, &g.s_t, &g.tau_bar())?)
}
