use nalgebra::Vector3;

use super::GeneratingError;
use crate::curvespace::{CurveError, MIN_CURVE_SAMPLES};
use crate::numeric::fit::{fit_sphere, SphereFit};
use crate::numeric::quadrature::cumulative;
use crate::numeric::stencil::derivative;

/// Allowed spread of ‖γ‖ for a curve on a sphere about the origin.
pub const SPHERE_TOL: f64 = 1e-6;

/// S_M = ‖γ′‖ cos(∫₀ˢ det(γ, γ′, γ″)/‖γ′‖² du + θ₀) for a curve on a sphere
/// centred at the origin, sampled with parameter spacing `h` (not
/// necessarily arc length).
pub fn s_m(pts: &[Vector3<f64>], h: f64, theta0: f64) -> Result<Vec<f64>, GeneratingError> {
    if pts.len() < MIN_CURVE_SAMPLES {
        return Err(CurveError::TooFewSamples { min: MIN_CURVE_SAMPLES, got: pts.len() }.into());
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(CurveError::InvalidStep(h).into());
    }
    let norms: Vec<f64> = pts.iter().map(|p| p.norm()).collect();
    let r = norms.iter().sum::<f64>() / norms.len() as f64;
    let deviation = norms.iter().map(|x| (x - r).abs()).fold(0.0, f64::max);
    if !(deviation < SPHERE_TOL) {
        return Err(GeneratingError::NotSpherical { deviation });
    }
    let d1 = derivative(pts, h);
    let d2 = derivative(&d1, h);
    let integrand: Vec<f64> = pts
        .iter()
        .zip(&d1)
        .zip(&d2)
        .map(|((g, a), b)| g.dot(&a.cross(b)) / a.norm_squared())
        .collect();
    let turned = cumulative(&integrand, h, 0.0);
    Ok(d1.iter().zip(&turned).map(|(a, t)| a.norm() * (t + theta0).cos()).collect())
}

/// Sphere fit of α(t) = ∫₀ᵗ S_M γ du.
pub fn spherical_check(s_m: &[f64], pts: &[Vector3<f64>], h: f64) -> Result<SphereFit, GeneratingError> {
    if s_m.len() != pts.len() {
        return Err(GeneratingError::Apparatus(format!("S_M has {} samples, γ has {}", s_m.len(), pts.len())));
    }
    let weighted: Vec<Vector3<f64>> = pts.iter().zip(s_m).map(|(p, w)| p * *w).collect();
    let alpha = cumulative(&weighted, h, Vector3::zeros());
    Ok(fit_sphere(&alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_circle(z: f64, s_max: f64, h: f64) -> Vec<Vector3<f64>> {
        let r = (1.0 - z * z).sqrt();
        let n = (s_max / h).round() as usize;
        (0..=n)
            .map(|k| {
                let s = k as f64 * h;
                Vector3::new(r * (s / r).cos(), r * (s / r).sin(), z)
            })
            .collect()
    }

    #[test]
    fn great_circle_has_unit_s_m() {
        let g = small_circle(0.0, 3.0, 1e-3);
        let sm = s_m(&g, 1e-3, 0.0).unwrap();
        assert!(sm.iter().all(|x| (x - 1.0).abs() < 1e-9));
        assert!(spherical_check(&sm, &g, 1e-3).unwrap().residual < 1e-4);
    }

    #[test]
    fn quarter_turn_phase_starts_at_zero() {
        let g = small_circle(0.6, 1.0, 1e-3);
        let sm = s_m(&g, 1e-3, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(sm[0].abs() < 1e-12);
    }

    #[test]
    fn constant_weight_on_a_small_circle_is_not_spherical() {
        let g = small_circle(0.6, 5.0, 1e-3);
        let fit = spherical_check(&vec![1.0; g.len()], &g, 1e-3).unwrap();
        assert!(fit.residual > 1e-2, "{}", fit.residual);
    }

    #[test]
    fn helix_is_not_spherical() {
        let pts: Vec<_> = (0..500)
            .map(|k| {
                let t = k as f64 * 1e-2;
                Vector3::new(t.cos(), t.sin(), 0.5 * t)
            })
            .collect();
        assert!(matches!(s_m(&pts, 1e-2, 0.0), Err(GeneratingError::NotSpherical { .. })));
    }

    #[test]
    fn speed_does_not_change_the_verdict() {
        // Great circle traversed at speed 2: S_M = 2 and α is still a circle.
        let pts: Vec<_> = (0..2000).map(|k| {
            let t = 2.0 * k as f64 * 1e-3;
            Vector3::new(t.cos(), 0.0, t.sin())
        }).collect();
        let sm = s_m(&pts, 1e-3, 0.0).unwrap();
        assert!(sm.iter().all(|x| (x - 2.0).abs() < 1e-9));
        assert!(spherical_check(&sm, &pts, 1e-3).unwrap().residual < 1e-4);
    }
}
