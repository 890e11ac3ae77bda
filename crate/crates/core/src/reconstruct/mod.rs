//! Curves from curvature and torsion: profiles, named families and the
//! Frenet-Serret integrator.

mod families;
mod integrate;
mod profile;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use families::{make_named_curve, mannheim_profile, MannheimVariant, MANNHEIM_CURVATURE_FLOOR};
pub use integrate::{integrate_frenet, InitialFrame, INITIAL_FRAME_TOL, STEP_BOUND};
pub use profile::{CurvatureProfile, ProfileError, ProfileKind, ScalarFn};

use crate::curvespace::CurveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconstructError {
    #[error(transparent)]
    Profile(ProfileError),
    #[error("step {step} exceeds the stability bound 0.01/max(κ, |τ|) = {limit}")]
    StepTooLarge { step: f64, limit: f64 },
    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("curvature must stay positive: κ({s}) = {kappa}")]
    NonPositiveCurvature { s: f64, kappa: f64 },
    #[error("tabulated grid spacing {spacing} is coarser than the integration step {step}")]
    GridTooCoarse { spacing: f64, step: f64 },
    #[error("initial frame is not orthonormal and right-handed (deviation {deviation:e})")]
    InvalidFrame { deviation: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Profile JSON, e.g.
/// `{"kind":"named","family":"helix","params":{"a":2,"b":1},"s_max":10,"step":0.001}` or
/// `{"kind":"tabulated","grid":[...],"kappa":[...],"tau":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProfileSpec {
    Named {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        s_max: f64,
        step: f64,
    },
    Tabulated {
        grid: Vec<f64>,
        kappa: Vec<f64>,
        tau: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step: Option<f64>,
    },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<CurvatureProfile, ProfileError> {
        match self {
            ProfileSpec::Named { family, params, s_max, .. } => make_named_curve(family, params, *s_max),
            ProfileSpec::Tabulated { grid, kappa, tau, .. } => CurvatureProfile::tabulated(grid, kappa, tau),
        }
    }

    /// Integration step: explicit, or the tabulated grid spacing.
    pub fn step(&self) -> Option<f64> {
        match self {
            ProfileSpec::Named { step, .. } => Some(*step),
            ProfileSpec::Tabulated { grid, step, .. } => {
                step.or_else(|| (grid.len() > 1).then(|| grid[grid.len() - 1] / (grid.len() - 1) as f64))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_json_shapes() {
        let named: ProfileSpec = serde_json::from_str(
            r#"{"kind":"named","family":"helix","params":{"a":2,"b":1},"s_max":10,"step":0.001}"#,
        )
        .unwrap();
        assert_eq!(named.step(), Some(0.001));
        let p = named.build().unwrap();
        assert!((p.kappa(1.0).unwrap() - 0.4).abs() < 1e-15);

        let tab: ProfileSpec =
            serde_json::from_str(r#"{"kind":"tabulated","grid":[0,0.5,1,1.5],"kappa":[1,1,1,1],"tau":[0,0,0,0]}"#)
                .unwrap();
        assert_eq!(tab.step(), Some(0.5));
        assert_eq!(tab.build().unwrap().kind(), ProfileKind::Tabulated);

        assert!(serde_json::from_str::<ProfileSpec>(r#"{"kind":"named","family":"helix","s_max":1,"step":0.1,"extra":1}"#).is_err());
    }
}
