//! Generating curves: the S_T and S_M functions, the curve K built from a
//! base curve M, and classification of curvature profiles.

mod build;
mod classify;
mod profile;
mod sphere;

use thiserror::Error;

pub use build::{build_generated, GeneratedChecks, GeneratedCurve};
pub use classify::{classify, ClassificationResult, Label, FIT_TOL};
pub use profile::{generated_curvatures, s_t, GeneratingProfile};
pub use sphere::{s_m, spherical_check, SPHERE_TOL};

use crate::curvespace::CurveError;
use crate::reconstruct::{ProfileError, ReconstructError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratingError {
    #[error("curve is not on a sphere about the origin: ‖γ‖ varies by {deviation:e}")]
    NotSpherical { deviation: f64 },
    #[error("generated curvature κ̄ = κ cos φ is not positive at s = {s} (κ̄ = {kappa_bar:e})")]
    CurvatureSignChange { s: f64, kappa_bar: f64 },
    #[error("apparatus needs a uniform grid with defined curvatures: {0}")]
    Apparatus(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
