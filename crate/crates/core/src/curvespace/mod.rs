//! Sampled space curves and their Frenet apparatus.
//!
//! A [`SampledCurve`] is a unit-speed curve sampled on a uniform arc-length
//! grid. [`frenet_apparatus`] estimates (T, N, B, κ, τ) from the samples with
//! fourth-order finite differences; [`resample_by_arclength`] turns an
//! arbitrary polyline into a [`SampledCurve`].

mod csv_io;
mod estimate;
mod resample;

pub use csv_io::{read_apparatus_csv, read_curve_csv, write_apparatus_csv, write_curve_csv, CsvError};
pub use estimate::{estimate_parametrized, estimate_with_velocity, frenet_apparatus, frenet_apparatus_with, ParametrizedEstimate};
pub use resample::{resample_by_arclength, resample_with_knots};

use nalgebra::Vector3;
use thiserror::Error;

use crate::numeric::Frame;

/// Relative speed tolerance for unit-speed validation.
pub const TOL_SPEED: f64 = 1e-3;
/// Curvature below which the principal normal is considered undefined.
pub const KAPPA_MIN: f64 = 1e-6;
/// Minimum number of samples a [`SampledCurve`] must carry.
pub const MIN_CURVE_SAMPLES: usize = 7;
/// Samples at each end whose estimate depends on a one-sided stencil. τ
/// nests three first derivatives (γ → T → T′ → B′), and each level widens
/// the reach of the two one-sided rows by two samples.
pub const BOUNDARY_SAMPLES: usize = 6;
/// Orthonormality and handedness tolerance for apparatus frames.
pub const FRAME_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("curve needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("arc-length values are not uniformly spaced (sample {index})")]
    NonUniformSpacing { index: usize },
    #[error("curve is not unit speed: chord/step ratio {ratio} at sample {index}")]
    NotUnitSpeed { index: usize, ratio: f64 },
    #[error("non-finite coordinate at sample {index}")]
    NonFinite { index: usize },
    #[error("degenerate input: total length {length} is below 10 × step ({step})")]
    DegenerateInput { length: f64, step: f64 },
    #[error("degenerate input: need at least 4 points, got {got}")]
    TooFewPoints { got: usize },
    #[error("consecutive points {index} and {next} coincide", next = index + 1)]
    DuplicatePoints { index: usize },
    #[error("vanishing curvature κ = {kappa:e} < κ_min at s = {s} (sample {index}); principal normal undefined")]
    VanishingCurvature { index: usize, s: f64, kappa: f64 },
}

/// Unit-speed curve sampled at `s_k = s0 + k·step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    s0: f64,
    step: f64,
    points: Vec<Vector3<f64>>,
}

impl SampledCurve {
    /// Validates sample count, step and unit speed.
    pub fn new(s0: f64, step: f64, points: Vec<Vector3<f64>>) -> Result<Self, CurveError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(CurveError::InvalidStep(step));
        }
        if points.len() < MIN_CURVE_SAMPLES {
            return Err(CurveError::TooFewSamples { min: MIN_CURVE_SAMPLES, got: points.len() });
        }
        if let Some(index) = points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(CurveError::NonFinite { index });
        }
        for (index, pair) in points.windows(2).enumerate() {
            let ratio = (pair[1] - pair[0]).norm() / step;
            if (ratio - 1.0).abs() > TOL_SPEED {
                return Err(CurveError::NotUnitSpeed { index, ratio });
            }
        }
        Ok(Self { s0, step, points })
    }

    /// Builds a curve from explicit `(s, p)` columns, checking uniform spacing.
    pub fn from_samples(s: &[f64], points: Vec<Vector3<f64>>) -> Result<Self, CurveError> {
        if s.len() != points.len() || s.len() < MIN_CURVE_SAMPLES {
            return Err(CurveError::TooFewSamples { min: MIN_CURVE_SAMPLES, got: s.len().min(points.len()) });
        }
        let n = s.len();
        let step = (s[n - 1] - s[0]) / (n - 1) as f64;
        let scale = s[0].abs().max(s[n - 1].abs()).max(step);
        for (k, &sk) in s.iter().enumerate() {
            if (sk - (s[0] + k as f64 * step)).abs() > 1e-12 * scale {
                return Err(CurveError::NonUniformSpacing { index: k });
            }
        }
        Self::new(s[0], step, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn s(&self, k: usize) -> f64 {
        self.s0 + k as f64 * self.step
    }

    pub fn s_values(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.s(k)).collect()
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn length(&self) -> f64 {
        self.step * (self.len() - 1) as f64
    }

    /// Rigid motion `p ↦ R p + t` applied to every sample.
    pub fn transformed(&self, rotation: &nalgebra::Matrix3<f64>, translation: &Vector3<f64>) -> Self {
        Self {
            s0: self.s0,
            step: self.step,
            points: self.points.iter().map(|p| rotation * p + translation).collect(),
        }
    }

    /// Uniformly scaled copy; arc length scales with the curve.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { s0: self.s0 * factor, step: self.step * factor, points: self.points.iter().map(|p| p * factor).collect() }
    }
}

/// Where an apparatus came from; decides the default tolerances downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Exact (κ, τ) from a profile and integrated frames.
    Analytic,
    /// Finite-difference estimate from sampled points.
    Estimated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleQuality {
    Interior,
    /// Computed with one-sided stencils; excluded from residual checks.
    Boundary,
    /// Frame undefined (non-regular point or vanishing curvature nearby).
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    pub s: f64,
    pub point: Vector3<f64>,
    pub frame: Frame,
    pub kappa: f64,
    pub tau: f64,
    pub quality: SampleQuality,
}

impl FrenetSample {
    pub fn is_defined(&self) -> bool {
        self.quality != SampleQuality::Undefined
    }
}

/// Per-sample Frenet frame with curvature and torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetApparatus {
    samples: Vec<FrenetSample>,
    provenance: Provenance,
}

impl FrenetApparatus {
    /// Wraps samples after checking frame orthonormality and handedness on
    /// every defined sample.
    pub fn new(samples: Vec<FrenetSample>, provenance: Provenance) -> Result<Self, ApparatusError> {
        for (index, smp) in samples.iter().enumerate() {
            if !smp.is_defined() {
                continue;
            }
            let dev = smp.frame.gram_deviation();
            let hand = smp.frame.handedness();
            if !(dev < FRAME_TOL) || !((hand - 1.0).abs() < FRAME_TOL) {
                return Err(ApparatusError::FrameNotOrthonormal { index, deviation: dev.max((hand - 1.0).abs()) });
            }
        }
        if samples.windows(2).any(|w| !(w[1].s > w[0].s)) {
            return Err(ApparatusError::NonMonotone);
        }
        Ok(Self { samples, provenance })
    }

    pub fn samples(&self) -> &[FrenetSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn s_values(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.s).collect()
    }

    pub fn kappa(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.kappa).collect()
    }

    pub fn tau(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.tau).collect()
    }

    pub fn points(&self) -> Vec<Vector3<f64>> {
        self.samples.iter().map(|p| p.point).collect()
    }

    /// Indices that residual checks may use: interior and defined samples.
    pub fn checked_indices(&self) -> Vec<usize> {
        self.samples
            .iter()
            .enumerate()
            .filter(|(_, p)| p.quality == SampleQuality::Interior)
            .map(|(i, _)| i)
            .collect()
    }

    /// Uniform spacing of the arc-length grid, if it is uniform.
    pub fn uniform_step(&self) -> Option<f64> {
        let n = self.samples.len();
        if n < 2 {
            return None;
        }
        let h = (self.samples[n - 1].s - self.samples[0].s) / (n - 1) as f64;
        let scale = self.samples[n - 1].s.abs().max(h);
        self.samples
            .iter()
            .enumerate()
            .all(|(k, p)| (p.s - (self.samples[0].s + k as f64 * h)).abs() <= 1e-9 * scale)
            .then_some(h)
    }

    /// Same apparatus with κ and τ replaced sample by sample.
    pub fn with_curvatures(&self, kappa: &[f64], tau: &[f64]) -> Self {
        let samples = self
            .samples
            .iter()
            .zip(kappa.iter().zip(tau))
            .map(|(p, (&k, &t))| FrenetSample { kappa: k, tau: t, ..*p })
            .collect();
        Self { samples, provenance: self.provenance }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApparatusError {
    #[error("frame at sample {index} deviates from orthonormal by {deviation:e}")]
    FrameNotOrthonormal { index: usize, deviation: f64 },
    #[error("apparatus arc-length values are not strictly increasing")]
    NonMonotone,
}

/// Max Gram-matrix deviation from the identity over all defined samples.
pub fn frame_orthonormality_report(app: &FrenetApparatus) -> f64 {
    app.samples().iter().filter(|p| p.is_defined()).map(|p| p.frame.gram_deviation()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, step: f64) -> Vec<Vector3<f64>> {
        (0..n).map(|k| Vector3::new(k as f64 * step, 0.0, 0.0)).collect()
    }

    #[test]
    fn rejects_short_and_nonunit_curves() {
        assert!(matches!(SampledCurve::new(0.0, 0.1, line(6, 0.1)), Err(CurveError::TooFewSamples { .. })));
        assert!(matches!(SampledCurve::new(0.0, 0.1, line(10, 0.2)), Err(CurveError::NotUnitSpeed { .. })));
        assert!(matches!(SampledCurve::new(0.0, -1.0, line(10, 0.2)), Err(CurveError::InvalidStep(_))));
        assert!(SampledCurve::new(0.0, 0.1, line(10, 0.1)).is_ok());
    }

    #[test]
    fn from_samples_detects_nonuniform_grid() {
        let mut s: Vec<f64> = (0..10).map(|k| k as f64 * 0.1).collect();
        assert!(SampledCurve::from_samples(&s, line(10, 0.1)).is_ok());
        s[4] += 1e-6;
        assert!(matches!(
            SampledCurve::from_samples(&s, line(10, 0.1)),
            Err(CurveError::NonUniformSpacing { index: 4 })
        ));
    }

    #[test]
    fn identity_frames_report_zero() {
        let samples = (0..8)
            .map(|k| FrenetSample {
                s: k as f64,
                point: Vector3::zeros(),
                frame: Frame::identity(),
                kappa: 1.0,
                tau: 0.0,
                quality: SampleQuality::Interior,
            })
            .collect();
        let app = FrenetApparatus::new(samples, Provenance::Analytic).unwrap();
        assert_eq!(frame_orthonormality_report(&app), 0.0);
    }

    #[test]
    fn rejects_left_handed_frames() {
        let mut f = Frame::identity();
        f.b = -f.b;
        let samples = vec![FrenetSample {
            s: 0.0,
            point: Vector3::zeros(),
            frame: f,
            kappa: 1.0,
            tau: 0.0,
            quality: SampleQuality::Interior,
        }];
        assert!(FrenetApparatus::new(samples, Provenance::Analytic).is_err());
    }
}
