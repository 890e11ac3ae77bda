use nalgebra::Vector3;

use super::{CurvatureProfile, ProfileError, ReconstructError};
use crate::curvespace::{FrenetApparatus, FrenetSample, Provenance, SampleQuality, SampledCurve};
use crate::numeric::{uniform_grid, Frame};

/// Tolerance on the orthonormality of a caller-supplied initial frame.
pub const INITIAL_FRAME_TOL: f64 = 1e-12;
/// Stability bound: step · max(κ, |τ|) must not exceed this.
pub const STEP_BOUND: f64 = 0.01;

/// Starting point and frame of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialFrame {
    origin: Vector3<f64>,
    frame: Frame,
}

impl Default for InitialFrame {
    fn default() -> Self {
        Self { origin: Vector3::zeros(), frame: Frame::identity() }
    }
}

impl InitialFrame {
    pub fn new(origin: Vector3<f64>, t: Vector3<f64>, n: Vector3<f64>, b: Vector3<f64>) -> Result<Self, ReconstructError> {
        Self::from_frame(origin, Frame { t, n, b })
    }

    pub fn from_frame(origin: Vector3<f64>, frame: Frame) -> Result<Self, ReconstructError> {
        let deviation = frame.gram_deviation().max((frame.handedness() - 1.0).abs());
        if !(deviation < INITIAL_FRAME_TOL) {
            return Err(ReconstructError::InvalidFrame { deviation });
        }
        Ok(Self { origin, frame })
    }

    pub fn origin(&self) -> Vector3<f64> {
        self.origin
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }
}

#[derive(Clone, Copy)]
struct State {
    x: Vector3<f64>,
    f: Frame,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            x: self.x + d.x * h,
            f: Frame { t: self.f.t + d.f.t * h, n: self.f.n + d.f.n * h, b: self.f.b + d.f.b * h },
        }
    }
}

fn frenet_rhs(state: &State, kappa: f64, tau: f64) -> State {
    let f = &state.f;
    State { x: f.t, f: Frame { t: f.n * kappa, n: f.b * tau - f.t * kappa, b: -f.n * tau } }
}

fn curvatures(profile: &CurvatureProfile, s: f64) -> Result<(f64, f64), ReconstructError> {
    let kappa = profile.kappa(s)?;
    if !(kappa > 0.0) {
        return Err(ReconstructError::NonPositiveCurvature { s, kappa });
    }
    Ok((kappa, profile.tau(s)?))
}

/// Integrates γ' = T, T' = κN, N' = −κT + τB, B' = −τN with classical
/// fixed-step RK4 over the whole profile domain.
///
/// The step actually used is the largest value ≤ `step` dividing `s_max`
/// evenly, so the last sample lands on `s_max`. Frames are projected back
/// to the nearest orthogonal matrix after every step. The returned
/// apparatus carries the integrated frames and the profile's exact (κ, τ).
pub fn integrate_frenet(
    profile: &CurvatureProfile,
    init: &InitialFrame,
    step: f64,
) -> Result<(SampledCurve, FrenetApparatus), ReconstructError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(ReconstructError::InvalidStep(step));
    }
    if let Some(spacing) = profile.grid_spacing() {
        if spacing > step * (1.0 + 1e-9) {
            return Err(ReconstructError::GridTooCoarse { spacing, step });
        }
    }
    let (grid, h) = uniform_grid(profile.s_max(), step);

    let mut table = Vec::with_capacity(2 * grid.len());
    let mut max_rate: f64 = 0.0;
    for (k, &s) in grid.iter().enumerate() {
        let node = curvatures(profile, s)?;
        max_rate = max_rate.max(node.0).max(node.1.abs());
        table.push(node);
        if k + 1 < grid.len() {
            let mid = curvatures(profile, s + 0.5 * h)?;
            max_rate = max_rate.max(mid.0).max(mid.1.abs());
            table.push(mid);
        }
    }
    let limit = STEP_BOUND / max_rate;
    if step > limit * (1.0 + 1e-12) {
        return Err(ReconstructError::StepTooLarge { step, limit });
    }

    let mut state = State { x: init.origin, f: init.frame };
    let mut samples = Vec::with_capacity(grid.len());
    let mut points = Vec::with_capacity(grid.len());
    for (k, &s) in grid.iter().enumerate() {
        let (kappa, tau) = table[2 * k];
        points.push(state.x);
        samples.push(FrenetSample { s, point: state.x, frame: state.f, kappa, tau, quality: SampleQuality::Interior });
        if k + 1 == grid.len() {
            break;
        }
        let (km, tm) = table[2 * k + 1];
        let (k1_, t1_) = table[2 * k + 2];
        let k1 = frenet_rhs(&state, kappa, tau);
        let k2 = frenet_rhs(&state.axpy(0.5 * h, &k1), km, tm);
        let k3 = frenet_rhs(&state.axpy(0.5 * h, &k2), km, tm);
        let k4 = frenet_rhs(&state.axpy(h, &k3), k1_, t1_);
        let mut next = state;
        next.x += (k1.x + (k2.x + k3.x) * 2.0 + k4.x) * (h / 6.0);
        next.f.t += (k1.f.t + (k2.f.t + k3.f.t) * 2.0 + k4.f.t) * (h / 6.0);
        next.f.n += (k1.f.n + (k2.f.n + k3.f.n) * 2.0 + k4.f.n) * (h / 6.0);
        next.f.b += (k1.f.b + (k2.f.b + k3.f.b) * 2.0 + k4.f.b) * (h / 6.0);
        next.f = next.f.orthonormalized();
        state = next;
    }
    let curve = SampledCurve::new(0.0, h, points)?;
    let app = FrenetApparatus::new(samples, Provenance::Analytic).map_err(|e| ReconstructError::Internal(e.to_string()))?;
    Ok((curve, app))
}

impl From<ProfileError> for ReconstructError {
    fn from(e: ProfileError) -> Self {
        ReconstructError::Profile(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use std::f64::consts::TAU;

    fn circle(s_max: f64) -> CurvatureProfile {
        let params: BTreeMap<String, f64> = [("r".to_string(), 1.0)].into();
        crate::reconstruct::make_named_curve("circle", &params, s_max).unwrap()
    }

    #[test]
    fn unit_circle_closes() {
        let (curve, app) = integrate_frenet(&circle(TAU), &InitialFrame::default(), 1e-3).unwrap();
        let gap = (curve.points()[curve.len() - 1] - curve.points()[0]).norm();
        assert!(gap < 1e-8, "gap {gap}");
        assert_eq!(app.provenance(), Provenance::Analytic);
        assert!(crate::curvespace::frame_orthonormality_report(&app) < 1e-12);
    }

    #[test]
    fn reversed_handedness_is_rejected() {
        let bad = InitialFrame::new(Vector3::zeros(), Vector3::x(), Vector3::y(), -Vector3::z());
        assert!(matches!(bad, Err(ReconstructError::InvalidFrame { .. })));
    }

    #[test]
    fn step_bound_is_enforced() {
        let err = integrate_frenet(&circle(1.0), &InitialFrame::default(), 0.05).unwrap_err();
        assert!(matches!(err, ReconstructError::StepTooLarge { .. }));
        let ok = integrate_frenet(&circle(1.0), &InitialFrame::default(), 0.01);
        assert!(ok.is_ok());
    }

    #[test]
    fn coarse_tabulated_grid_is_rejected() {
        let grid = [0.0, 0.5, 1.0, 1.5];
        let p = CurvatureProfile::tabulated(&grid, &[1.0; 4], &[0.0; 4]).unwrap();
        assert!(matches!(
            integrate_frenet(&p, &InitialFrame::default(), 1e-3),
            Err(ReconstructError::GridTooCoarse { .. })
        ));
    }
}
