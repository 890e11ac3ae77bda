use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::numeric::quadrature::{cumulative_simpson_fn, gauss_legendre};
use crate::numeric::spline::CubicSpline;

/// Shareable scalar function of arc length.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("s = {s} is outside the profile domain [0, {s_max}]")]
    OutOfDomain { s: f64, s_max: f64 },
    #[error("profile domain end must be positive and finite, got {0}")]
    InvalidDomain(f64),
    #[error("invalid tabulated grid: {0}")]
    InvalidGrid(String),
    #[error("curvature must be positive: κ({s}) = {kappa}")]
    NonPositiveCurvature { s: f64, kappa: f64 },
    #[error("unknown curve family {0:?}")]
    UnknownFamily(String),
    #[error("family {family}: missing parameter {param:?}")]
    MissingParam { family: String, param: String },
    #[error("family {family}: unexpected parameter {param:?}")]
    UnexpectedParam { family: String, param: String },
    #[error("family {family}: parameter {param} out of range ({reason})")]
    ParamOutOfRange { family: String, param: String, reason: String },
    #[error("curvature vanishes: κ({s}) = {kappa:e} is below the floor {floor:e}")]
    CurvatureVanishes { s: f64, kappa: f64, floor: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    NamedAnalytic,
    Tabulated,
}

#[derive(Clone)]
enum TauIntegral {
    Closed(ScalarFn),
    /// Cumulative Gauss-Legendre table of τ on a fine uniform grid.
    Table { width: f64, values: Vec<f64> },
}

#[derive(Clone)]
enum Repr {
    Analytic { kappa: ScalarFn, tau: ScalarFn, integral: TauIntegral },
    Tabulated { kappa: CubicSpline, tau: CubicSpline, spacing: f64 },
}

/// Curvature κ(s), torsion τ(s) and Φ(s) = ∫₀ˢ τ du on `[0, s_max]`.
#[derive(Clone)]
pub struct CurvatureProfile {
    label: String,
    s_max: f64,
    repr: Repr,
}

impl fmt::Debug for CurvatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurvatureProfile")
            .field("label", &self.label)
            .field("kind", &self.kind())
            .field("s_max", &self.s_max)
            .finish()
    }
}

const TABLE_WIDTH: f64 = 1e-2;

impl CurvatureProfile {
    /// Analytic profile. Without a closed-form `tau_integral`, Φ is tabulated
    /// by Gauss-Legendre quadrature of τ.
    pub fn analytic(
        label: impl Into<String>,
        kappa: ScalarFn,
        tau: ScalarFn,
        tau_integral: Option<ScalarFn>,
        s_max: f64,
    ) -> Result<Self, ProfileError> {
        if !(s_max > 0.0 && s_max.is_finite()) {
            return Err(ProfileError::InvalidDomain(s_max));
        }
        let integral = match tau_integral {
            Some(f) => TauIntegral::Closed(f),
            None => {
                let panels = (s_max / TABLE_WIDTH).ceil().max(1.0) as usize;
                let width = s_max / panels as f64;
                let mut values = Vec::with_capacity(panels + 1);
                values.push(0.0);
                for k in 0..panels {
                    let a = k as f64 * width;
                    let next = values[k] + gauss_legendre(|x| tau(x), a, a + width);
                    values.push(next);
                }
                TauIntegral::Table { width, values }
            }
        };
        Ok(Self { label: label.into(), s_max, repr: Repr::Analytic { kappa, tau, integral } })
    }

    /// Tabulated profile on a uniform grid starting at 0, cubic-interpolated.
    pub fn tabulated(grid: &[f64], kappa: &[f64], tau: &[f64]) -> Result<Self, ProfileError> {
        let n = grid.len();
        if n < 4 || kappa.len() != n || tau.len() != n {
            return Err(ProfileError::InvalidGrid(format!(
                "need ≥ 4 points and equal lengths (grid {n}, kappa {}, tau {})",
                kappa.len(),
                tau.len()
            )));
        }
        if grid[0] != 0.0 {
            return Err(ProfileError::InvalidGrid(format!("grid must start at 0, starts at {}", grid[0])));
        }
        if grid.iter().chain(kappa).chain(tau).any(|v| !v.is_finite()) {
            return Err(ProfileError::InvalidGrid("non-finite value".into()));
        }
        let s_max = grid[n - 1];
        let spacing = s_max / (n - 1) as f64;
        if !(spacing > 0.0) || grid.iter().enumerate().any(|(k, &g)| (g - k as f64 * spacing).abs() > 1e-9 * s_max) {
            return Err(ProfileError::InvalidGrid("grid is not uniform and increasing".into()));
        }
        if let Some(k) = kappa.iter().position(|&v| v <= 0.0) {
            return Err(ProfileError::NonPositiveCurvature { s: grid[k], kappa: kappa[k] });
        }
        let kappa = CubicSpline::new(grid.to_vec(), kappa.to_vec()).expect("validated grid");
        let tau = CubicSpline::new(grid.to_vec(), tau.to_vec()).expect("validated grid");
        Ok(Self { label: "tabulated".into(), s_max, repr: Repr::Tabulated { kappa, tau, spacing } })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> ProfileKind {
        match self.repr {
            Repr::Analytic { .. } => ProfileKind::NamedAnalytic,
            Repr::Tabulated { .. } => ProfileKind::Tabulated,
        }
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    /// Grid spacing of a tabulated profile.
    pub fn grid_spacing(&self) -> Option<f64> {
        match &self.repr {
            Repr::Tabulated { spacing, .. } => Some(*spacing),
            Repr::Analytic { .. } => None,
        }
    }

    fn check(&self, s: f64) -> Result<f64, ProfileError> {
        let slack = 1e-12 * self.s_max;
        if s.is_nan() || s < -slack || s > self.s_max + slack {
            return Err(ProfileError::OutOfDomain { s, s_max: self.s_max });
        }
        Ok(s.clamp(0.0, self.s_max))
    }

    pub fn kappa(&self, s: f64) -> Result<f64, ProfileError> {
        let s = self.check(s)?;
        Ok(match &self.repr {
            Repr::Analytic { kappa, .. } => kappa(s),
            Repr::Tabulated { kappa, .. } => kappa.eval(s),
        })
    }

    pub fn tau(&self, s: f64) -> Result<f64, ProfileError> {
        let s = self.check(s)?;
        Ok(match &self.repr {
            Repr::Analytic { tau, .. } => tau(s),
            Repr::Tabulated { tau, .. } => tau.eval(s),
        })
    }

    /// Φ(s) = ∫₀ˢ τ(u) du.
    pub fn tau_integral(&self, s: f64) -> Result<f64, ProfileError> {
        let s = self.check(s)?;
        Ok(match &self.repr {
            Repr::Analytic { integral: TauIntegral::Closed(f), .. } => f(s),
            Repr::Analytic { tau, integral: TauIntegral::Table { width, values }, .. } => {
                let k = ((s / width).floor() as usize).min(values.len() - 2);
                let a = k as f64 * width;
                values[k] + gauss_legendre(|x| tau(x), a, s)
            }
            Repr::Tabulated { tau, .. } => tau.integral(s),
        })
    }

    /// Max |Φ(s_k) − ∫₀^{s_k} τ| over a grid of `intervals` Simpson panels.
    pub fn tau_integral_defect(&self, intervals: usize) -> Result<f64, ProfileError> {
        let grid: Vec<f64> = (0..=intervals).map(|k| self.s_max * k as f64 / intervals as f64).collect();
        let quad = cumulative_simpson_fn(|s| self.tau(s).unwrap_or(f64::NAN), &grid);
        let mut worst = self.tau_integral(0.0)?.abs();
        for (s, q) in grid.iter().zip(quad) {
            worst = worst.max((self.tau_integral(*s)? - q).abs());
        }
        Ok(worst)
    }
}
