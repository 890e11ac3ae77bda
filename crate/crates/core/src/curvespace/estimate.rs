use nalgebra::Vector3;

use super::{
    CurveError, FrenetApparatus, FrenetSample, Provenance, SampleQuality, SampledCurve, BOUNDARY_SAMPLES, KAPPA_MIN,
};
use crate::numeric::quadrature::cumulative;
use crate::numeric::stencil::derivative;
use crate::numeric::Frame;

const NAN3: Vector3<f64> = Vector3::new(f64::NAN, f64::NAN, f64::NAN);

/// Frenet estimate of a curve sampled on a uniform (not necessarily
/// arc-length) parameter grid.
#[derive(Debug, Clone)]
pub struct ParametrizedEstimate {
    /// |dγ/dt| per sample.
    pub speed: Vec<f64>,
    /// Samples carry the cumulative arc length as `s`.
    pub samples: Vec<FrenetSample>,
    /// Samples whose speed fell below the floor or whose velocity reverses
    /// against a neighbour.
    pub singular: Vec<usize>,
    /// Regular samples whose curvature fell below κ_min.
    pub vanishing: Vec<usize>,
}

/// Estimates (T, N, B, κ, τ) on a uniform parameter grid of spacing `h`.
///
/// T = γ'/|γ'|, κ = |T'|/|γ'|, N = T'/|T'|, B = T × N (then polar
/// re-orthonormalized), τ = −⟨B', N⟩/|γ'|, all derivatives with the 5-point
/// stencil. Samples with speed below `speed_floor`, next to a velocity
/// reversal, or with κ below `kappa_min` get undefined frames, and the undefined region grows by the stencil
/// footprint of every later derivative.
pub fn estimate_parametrized(points: &[Vector3<f64>], h: f64, speed_floor: f64, kappa_min: f64) -> ParametrizedEstimate {
    estimate_with_velocity(points, &derivative(points, h), h, speed_floor, kappa_min)
}

/// As [`estimate_parametrized`], with dγ/dt supplied by the caller (for
/// curves whose velocity is known in closed form from other data).
pub fn estimate_with_velocity(
    points: &[Vector3<f64>],
    d1: &[Vector3<f64>],
    h: f64,
    speed_floor: f64,
    kappa_min: f64,
) -> ParametrizedEstimate {
    let n = points.len();
    let speed: Vec<f64> = d1.iter().map(|d| d.norm()).collect();
    // A velocity that reverses between neighbours hides a cusp between samples.
    let opposed = |i: usize, j: usize| speed[j] >= speed_floor && d1[i].dot(&d1[j]) < 0.0;
    let reversed = |i: usize| (i > 0 && opposed(i, i - 1)) || (i + 1 < n && opposed(i, i + 1));
    let mut singular = Vec::new();
    let tangent: Vec<Vector3<f64>> = d1
        .iter()
        .zip(&speed)
        .enumerate()
        .map(|(i, (d, &sp))| {
            if sp < speed_floor || !sp.is_finite() || reversed(i) {
                singular.push(i);
                NAN3
            } else {
                d / sp
            }
        })
        .collect();
    let dt = derivative(&tangent, h);

    let mut vanishing = Vec::new();
    let mut kappa = Vec::with_capacity(n);
    let mut frames = Vec::with_capacity(n);
    for i in 0..n {
        let norm = dt[i].norm();
        let k = norm / speed[i];
        kappa.push(k);
        let defined = tangent[i].x.is_finite() && norm.is_finite();
        if defined && !(k >= kappa_min) {
            vanishing.push(i);
        }
        if !defined || !(k >= kappa_min) {
            frames.push(Frame { t: NAN3, n: NAN3, b: NAN3 });
            continue;
        }
        let t = tangent[i];
        let nn = dt[i] / norm;
        frames.push(Frame { t, n: nn, b: t.cross(&nn) }.orthonormalized());
    }

    let binormals: Vec<Vector3<f64>> = frames.iter().map(|f| f.b).collect();
    let db = derivative(&binormals, h);
    let arclength = cumulative(&speed, h, 0.0);

    let samples = (0..n)
        .map(|i| {
            let tau = -db[i].dot(&frames[i].n) / speed[i];
            let defined = frames[i].is_finite() && tau.is_finite();
            let quality = if !defined {
                SampleQuality::Undefined
            } else if i < BOUNDARY_SAMPLES || i + BOUNDARY_SAMPLES >= n {
                SampleQuality::Boundary
            } else {
                SampleQuality::Interior
            };
            FrenetSample {
                s: arclength[i],
                point: points[i],
                frame: frames[i],
                kappa: kappa[i],
                tau: if defined { tau } else { f64::NAN },
                quality,
            }
        })
        .collect();
    ParametrizedEstimate { speed, samples, singular, vanishing }
}

/// Frenet apparatus of a unit-speed sampled curve with the default κ_min.
pub fn frenet_apparatus(curve: &SampledCurve) -> Result<FrenetApparatus, CurveError> {
    frenet_apparatus_with(curve, KAPPA_MIN)
}

pub fn frenet_apparatus_with(curve: &SampledCurve, kappa_min: f64) -> Result<FrenetApparatus, CurveError> {
    let est = estimate_parametrized(curve.points(), curve.step(), 0.0, kappa_min);
    if let Some(&index) = est.vanishing.first().or(est.singular.first()) {
        return Err(CurveError::VanishingCurvature { index, s: curve.s(index), kappa: est.samples[index].kappa });
    }
    let samples = est
        .samples
        .into_iter()
        .enumerate()
        .map(|(k, smp)| FrenetSample { s: curve.s(k), ..smp })
        .collect();
    // Frames are polar-projected per sample, so construction cannot fail.
    Ok(FrenetApparatus::new(samples, Provenance::Estimated).expect("estimated frames are orthonormal"))
}
