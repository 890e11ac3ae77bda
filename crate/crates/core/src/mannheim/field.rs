use std::fmt;
use std::sync::Arc;

use super::MannheimError;
use crate::reconstruct::ScalarFn;

/// Allowed deviation of u² + v² + w² from 1.
pub const UNIT_TOL: f64 = 1e-12;

/// Unit field V = uT + vN + wB given by its frame components.
#[derive(Clone)]
pub struct FrameVectorField {
    u: ScalarFn,
    v: ScalarFn,
    w: ScalarFn,
    constant: Option<(f64, f64, f64)>,
}

impl fmt::Debug for FrameVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Some((u, v, w)) => write!(f, "FrameVectorField({u}, {v}, {w})"),
            None => f.write_str("FrameVectorField(<varying>)"),
        }
    }
}

fn check_unit(s: f64, (u, v, w): (f64, f64, f64)) -> Result<(), MannheimError> {
    let norm2 = u * u + v * v + w * w;
    if (norm2 - 1.0).abs() < UNIT_TOL {
        Ok(())
    } else {
        Err(MannheimError::NotUnit { s, norm: norm2.sqrt() })
    }
}

impl FrameVectorField {
    pub fn constant(u: f64, v: f64, w: f64) -> Result<Self, MannheimError> {
        check_unit(0.0, (u, v, w))?;
        Ok(Self { u: Arc::new(move |_| u), v: Arc::new(move |_| v), w: Arc::new(move |_| w), constant: Some((u, v, w)) })
    }

    /// V = T.
    pub fn tangent() -> Self {
        Self::constant(1.0, 0.0, 0.0).expect("unit")
    }

    /// V = B.
    pub fn binormal() -> Self {
        Self::constant(0.0, 0.0, 1.0).expect("unit")
    }

    /// Field from component functions, unit norm checked on `grid`.
    pub fn from_fns(u: ScalarFn, v: ScalarFn, w: ScalarFn, grid: &[f64]) -> Result<Self, MannheimError> {
        let field = Self { u, v, w, constant: None };
        for &s in grid {
            check_unit(s, field.at(s))?;
        }
        Ok(field)
    }

    /// u = √(1 − v²) cos ψ, w = √(1 − v²) sin ψ: unit by construction.
    pub fn with_varying_normal(v: ScalarFn, psi: ScalarFn) -> Self {
        let (v1, v2, p2) = (v.clone(), v.clone(), psi.clone());
        Self {
            u: Arc::new(move |s| (1.0 - v1(s).powi(2)).sqrt() * psi(s).cos()),
            v,
            w: Arc::new(move |s| (1.0 - v2(s).powi(2)).sqrt() * p2(s).sin()),
            constant: None,
        }
    }

    pub fn at(&self, s: f64) -> (f64, f64, f64) {
        ((self.u)(s), (self.v)(s), (self.w)(s))
    }

    pub fn v_fn(&self) -> ScalarFn {
        self.v.clone()
    }

    pub fn constant_components(&self) -> Option<(f64, f64, f64)> {
        self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.constant.is_some()
    }

    /// True when v vanishes at every grid point.
    pub fn v_vanishes_on(&self, grid: &[f64]) -> bool {
        grid.iter().all(|&s| (self.v)(s).abs() <= UNIT_TOL)
    }
}
