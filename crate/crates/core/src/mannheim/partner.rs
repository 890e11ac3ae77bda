use nalgebra::Vector3;

use super::predicate::check_grid;
use super::{FrameVectorField, MannheimError, OffsetFunction};
use crate::curvespace::{
    estimate_with_velocity, FrenetApparatus, Provenance, SampleQuality, SampledCurve, KAPPA_MIN,
};
use crate::numeric::quadrature::cumulative;
use crate::numeric::stencil::{derivative, unwrap_angles};

/// Partner speed ds̄/ds below which a sample counts as non-regular.
pub const SPEED_FLOOR: f64 = 1e-6;
/// Fraction of degenerate samples above which the partner is rejected.
pub const DEGENERATE_FRACTION: f64 = 0.05;
/// Offsets closer to zero than this make the partner equations singular.
pub const LAMBDA_MIN: f64 = 1e-9;

/// Partner curve β sampled on the base arc-length grid (not unit speed).
#[derive(Debug, Clone, PartialEq)]
pub struct Partner {
    pub points: Vec<Vector3<f64>>,
    /// dβ/ds from the base frame: V + λ'N + λ(−κT + τB).
    pub velocity: Vec<Vector3<f64>>,
    pub base_s: Vec<f64>,
    pub step: f64,
}

/// Monotone table s ↔ s̄ with the speed ds̄/ds at each base sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    pub base_s: Vec<f64>,
    pub partner_s: Vec<f64>,
    pub speed: Vec<f64>,
}

impl Correspondence {
    pub fn len(&self) -> usize {
        self.base_s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base_s.is_empty()
    }

    /// Uniform base spacing.
    pub fn step(&self) -> f64 {
        let n = self.base_s.len();
        (self.base_s[n - 1] - self.base_s[0]) / (n - 1) as f64
    }
}

/// Partner apparatus aligned index-by-index with the base grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PartnerApparatus {
    pub app: FrenetApparatus,
    pub correspondence: Correspondence,
}

fn degenerate(count: usize, n: usize) -> Result<(), MannheimError> {
    let fraction = count as f64 / n as f64;
    if fraction > DEGENERATE_FRACTION {
        Err(MannheimError::DegeneratePartner { fraction })
    } else {
        Ok(())
    }
}

/// β(s) = γ(0) + ∫₀ˢ (uT + vN + wB) du + λ(s) N(s).
///
/// The integral runs over the sampled frames with fourth-order cumulative
/// quadrature. The velocity dβ/ds follows from the base Frenet equations
/// and is kept alongside the points, so the partner apparatus needs one
/// numerical derivative fewer. A partner that is non-regular (ds̄/ds below the floor) on
/// more than 5% of the samples is rejected as degenerate.
pub fn build_partner(
    curve: &SampledCurve,
    app: &FrenetApparatus,
    field: &FrameVectorField,
    lam: &OffsetFunction,
) -> Result<Partner, MannheimError> {
    check_grid(app, lam)?;
    if curve.len() != app.len() {
        return Err(MannheimError::DomainMismatch(format!("curve has {} samples, apparatus {}", curve.len(), app.len())));
    }
    for (k, p) in app.samples().iter().enumerate() {
        if !p.is_defined() || !(p.kappa > KAPPA_MIN) {
            return Err(MannheimError::VanishingCurvature { index: k, kappa: p.kappa });
        }
    }
    let h = curve.step();
    let v_samples: Vec<Vector3<f64>> = app
        .samples()
        .iter()
        .map(|p| {
            let (u, v, w) = field.at(p.s);
            p.frame.t * u + p.frame.n * v + p.frame.b * w
        })
        .collect();
    let integral = cumulative(&v_samples, h, Vector3::zeros());
    let origin = curve.points()[0];
    let points: Vec<Vector3<f64>> = integral
        .iter()
        .zip(app.samples())
        .zip(lam.values())
        .map(|((i, p), &l)| origin + i + p.frame.n * l)
        .collect();
    let velocity: Vec<Vector3<f64>> = app
        .samples()
        .iter()
        .zip(&v_samples)
        .zip(lam.values().iter().zip(lam.slope()))
        .map(|((p, vv), (&l, &dl))| vv + p.frame.n * dl + (p.frame.b * p.tau - p.frame.t * p.kappa) * l)
        .collect();
    let slow = velocity.iter().filter(|d| !(d.norm() >= SPEED_FLOOR)).count();
    degenerate(slow, points.len())?;
    Ok(Partner { points, velocity, base_s: curve.s_values(), step: h })
}

/// Frenet apparatus of the partner on the base grid, with s̄ as its arc
/// length. Samples near non-regular points are marked undefined.
pub fn partner_apparatus(partner: &Partner) -> Result<PartnerApparatus, MannheimError> {
    let est = estimate_with_velocity(&partner.points, &partner.velocity, partner.step, SPEED_FLOOR, KAPPA_MIN);
    degenerate(est.singular.len() + est.vanishing.len(), partner.points.len())?;
    let partner_s: Vec<f64> = est.samples.iter().map(|p| p.s).collect();
    let app = FrenetApparatus::new(est.samples, Provenance::Estimated)
        .map_err(|_| MannheimError::DegeneratePartner { fraction: 1.0 })?;
    Ok(PartnerApparatus {
        app,
        correspondence: Correspondence { base_s: partner.base_s.clone(), partner_s, speed: est.speed },
    })
}

fn aligned(base: &FrenetApparatus, partner: &FrenetApparatus, corr: &Correspondence) -> Result<(), MannheimError> {
    if base.len() != partner.len() || base.len() != corr.len() {
        return Err(MannheimError::DomainMismatch(format!(
            "base {} / partner {} / correspondence {} samples",
            base.len(),
            partner.len(),
            corr.len()
        )));
    }
    if corr.partner_s.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(MannheimError::DomainMismatch("correspondence is not monotone".into()));
    }
    Ok(())
}

/// Indices where both apparatuses are usable for residual checks.
pub(crate) fn joint_indices(base: &FrenetApparatus, partner: &FrenetApparatus) -> Vec<usize> {
    let inner = |a: &FrenetApparatus, k: usize| match a.provenance() {
        Provenance::Analytic => a.samples()[k].is_defined(),
        Provenance::Estimated => a.samples()[k].quality == SampleQuality::Interior,
    };
    (0..base.len()).filter(|&k| inner(base, k) && inner(partner, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collinearity {
    /// max ‖B̄ × N‖.
    pub max: f64,
    /// Sign of ⟨B̄, N⟩ at the first checked sample.
    pub epsilon: i8,
    pub sign_flips: usize,
    pub checked: usize,
}

/// Tests B̄(s̄(s)) = ϵ N(s) over the jointly checked samples.
pub fn verify_collinear(
    base: &FrenetApparatus,
    partner: &FrenetApparatus,
    corr: &Correspondence,
) -> Result<Collinearity, MannheimError> {
    aligned(base, partner, corr)?;
    let flat = partner.samples().iter().filter(|p| !p.is_defined() || !(p.kappa >= KAPPA_MIN)).count();
    degenerate(flat, partner.len())?;
    let idx = joint_indices(base, partner);
    let mut out = Collinearity { max: 0.0, epsilon: 0, sign_flips: 0, checked: idx.len() };
    let mut last = 0i8;
    for k in idx {
        let bbar = partner.samples()[k].frame.b;
        let n = base.samples()[k].frame.n;
        out.max = out.max.max(bbar.cross(&n).norm());
        let sign = if bbar.dot(&n) >= 0.0 { 1 } else { -1 };
        if last == 0 {
            out.epsilon = sign;
        } else if sign != last {
            out.sign_flips += 1;
        }
        last = sign;
    }
    Ok(out)
}

/// Max relative gap between ds/ds̄ and √((1 + λ²τ̄²)/(1 − v²)).
///
/// Measured relative to max(1, predicted) so values near a non-regular
/// point of the partner, where ds/ds̄ grows without bound, are compared by
/// their leading digits.
pub fn speed_ratio_residual(
    partner: &FrenetApparatus,
    lam: &OffsetFunction,
    field: &FrameVectorField,
    corr: &Correspondence,
    base: &FrenetApparatus,
) -> Result<f64, MannheimError> {
    aligned(base, partner, corr)?;
    let mut worst: f64 = 0.0;
    for k in joint_indices(base, partner) {
        let tb = partner.samples()[k].tau;
        let l = lam.values()[k];
        let (_, v, _) = field.at(corr.base_s[k]);
        let predicted = ((1.0 + l * l * tb * tb) / (1.0 - v * v)).sqrt();
        let observed = 1.0 / corr.speed[k];
        let r = (observed - predicted).abs() / predicted.max(1.0);
        if r.is_finite() {
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// Angle of T̄ in the (T, B) plane and its rate against κ̄.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaRate {
    /// (s, θ) on the base grid, unwrapped.
    pub theta: Vec<(f64, f64)>,
    /// max ||dθ/ds̄| − κ̄| / κ̄ over the checked samples.
    pub residual: f64,
    /// Sign of dθ/ds̄ at the first checked sample.
    pub sign: i8,
    /// True when dθ/ds̄ keeps one sign over the checked samples.
    pub sign_constant: bool,
}

pub fn theta_rate_check(
    base: &FrenetApparatus,
    partner: &FrenetApparatus,
    corr: &Correspondence,
) -> Result<ThetaRate, MannheimError> {
    aligned(base, partner, corr)?;
    let mut theta: Vec<f64> = base
        .samples()
        .iter()
        .zip(partner.samples())
        .map(|(b, p)| p.frame.t.dot(&b.frame.b).atan2(p.frame.t.dot(&b.frame.t)))
        .collect();
    unwrap_angles(&mut theta);
    let rate = derivative(&theta, corr.step());
    let mut out = ThetaRate {
        theta: corr.base_s.iter().copied().zip(theta.iter().copied()).collect(),
        residual: 0.0,
        sign: 0,
        sign_constant: true,
    };
    for k in joint_indices(base, partner) {
        let r = rate[k] / corr.speed[k];
        if !r.is_finite() {
            // The rate stencil reaches into an undefined sample.
            continue;
        }
        let kb = partner.samples()[k].kappa;
        out.residual = out.residual.max((r.abs() - kb).abs() / kb);
        let sign = if r >= 0.0 { 1 } else { -1 };
        if out.sign == 0 {
            out.sign = sign;
        } else if sign != out.sign {
            out.sign_constant = false;
        }
    }
    Ok(out)
}
