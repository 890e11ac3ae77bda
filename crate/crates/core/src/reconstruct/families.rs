use std::collections::BTreeMap;
use std::sync::Arc;

use super::{CurvatureProfile, ProfileError, ScalarFn};

/// Relative curvature floor for Mannheim profiles: κ(s) ≥ floor · R.
pub const MANNHEIM_CURVATURE_FLOOR: f64 = 1e-3;

/// Which Mannheim identity a [`mannheim_profile`] satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MannheimVariant {
    /// κ = R cos²θ, τ = R cosθ sinθ, so R κ = κ² + τ².
    T,
    /// κ = R cosθ sinθ, τ = R cos²θ, so R τ = κ² + τ².
    B,
}

struct Params<'a> {
    family: &'a str,
    map: &'a BTreeMap<String, f64>,
}

impl Params<'_> {
    fn allow(&self, names: &[&str]) -> Result<(), ProfileError> {
        match self.map.keys().find(|k| !names.contains(&k.as_str())) {
            Some(k) => Err(ProfileError::UnexpectedParam { family: self.family.into(), param: k.clone() }),
            None => Ok(()),
        }
    }

    fn get(&self, name: &str) -> Result<f64, ProfileError> {
        self.map
            .get(name)
            .copied()
            .ok_or_else(|| ProfileError::MissingParam { family: self.family.into(), param: name.into() })
    }

    fn get_or(&self, name: &str, default: f64) -> f64 {
        self.map.get(name).copied().unwrap_or(default)
    }

    fn range(&self, name: &str, value: f64, ok: bool, reason: &str) -> Result<f64, ProfileError> {
        if ok && value.is_finite() {
            Ok(value)
        } else {
            Err(ProfileError::ParamOutOfRange { family: self.family.into(), param: name.into(), reason: reason.into() })
        }
    }
}

fn constant(v: f64) -> ScalarFn {
    Arc::new(move |_| v)
}

/// Analytic profile of a named family on `[0, s_max]`.
///
/// | family | params | κ, τ |
/// |---|---|---|
/// | `circle` | `r > 0` | 1/r, 0 |
/// | `helix` | `a > 0`, `b` | a/(a²+b²), b/(a²+b²) |
/// | `salkowski` | `a ∈ (0,1)`, needs `a·s_max < 1` | 1, a s/√(1 − a²s²) |
/// | `mannheim_t`, `mannheim_b` | `R > 0`, `rate`, `phase` | [`mannheim_profile`] with θ = phase + rate·s |
/// | `generator` | `R > 0`, `tau`, `phase` | R cos(τ s + phase), τ |
pub fn make_named_curve(family: &str, params: &BTreeMap<String, f64>, s_max: f64) -> Result<CurvatureProfile, ProfileError> {
    let p = Params { family, map: params };
    match family {
        "circle" => {
            p.allow(&["r"])?;
            let r = p.get("r")?;
            let r = p.range("r", r, r > 0.0, "r > 0")?;
            CurvatureProfile::analytic("circle", constant(1.0 / r), constant(0.0), Some(constant(0.0)), s_max)
        }
        "helix" => {
            p.allow(&["a", "b"])?;
            let a = p.get("a")?;
            let a = p.range("a", a, a > 0.0, "a > 0")?;
            let b = p.get("b")?;
            let b = p.range("b", b, true, "finite")?;
            let c2 = a * a + b * b;
            let tau = b / c2;
            CurvatureProfile::analytic("helix", constant(a / c2), constant(tau), Some(Arc::new(move |s| tau * s)), s_max)
        }
        "salkowski" => {
            p.allow(&["a"])?;
            let a = p.get("a")?;
            let a = p.range("a", a, a > 0.0 && a < 1.0, "a ∈ (0, 1)")?;
            p.range("a", a, a * s_max < 1.0, "torsion diverges at s = 1/a; need a·s_max < 1")?;
            CurvatureProfile::analytic(
                "salkowski",
                constant(1.0),
                Arc::new(move |s| a * s / (1.0 - a * a * s * s).sqrt()),
                Some(Arc::new(move |s| (1.0 - (1.0 - a * a * s * s).sqrt()) / a)),
                s_max,
            )
        }
        "mannheim_t" | "mannheim_b" => {
            p.allow(&["R", "rate", "phase"])?;
            let r = p.get("R")?;
            let r = p.range("R", r, r > 0.0, "R > 0")?;
            let rate = p.get_or("rate", 0.0);
            let phase = p.get_or("phase", 0.0);
            let variant = if family == "mannheim_t" { MannheimVariant::T } else { MannheimVariant::B };
            mannheim_profile(r, Arc::new(move |s| phase + rate * s), variant, s_max, 1e-3)
        }
        "generator" => {
            p.allow(&["R", "tau", "phase"])?;
            let r = p.get("R")?;
            let r = p.range("R", r, r > 0.0, "R > 0")?;
            let tau = p.get("tau")?;
            let phase = p.get_or("phase", 0.0);
            CurvatureProfile::analytic(
                "generator",
                Arc::new(move |s| r * (tau * s + phase).cos()),
                constant(tau),
                Some(Arc::new(move |s| tau * s)),
                s_max,
            )
        }
        other => Err(ProfileError::UnknownFamily(other.to_string())),
    }
}

/// Mannheim profile from an angle function θ(s).
///
/// The curvature floor `κ ≥ 1e-3·R` is checked on a grid of spacing ≤
/// `check_step`.
pub fn mannheim_profile(
    r: f64,
    theta: ScalarFn,
    variant: MannheimVariant,
    s_max: f64,
    check_step: f64,
) -> Result<CurvatureProfile, ProfileError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(ProfileError::ParamOutOfRange { family: "mannheim".into(), param: "R".into(), reason: "R > 0".into() });
    }
    let th = theta.clone();
    let (kappa, tau): (ScalarFn, ScalarFn) = match variant {
        MannheimVariant::T => {
            (Arc::new(move |s| r * th(s).cos().powi(2)), Arc::new(move |s| r * theta(s).cos() * theta(s).sin()))
        }
        MannheimVariant::B => {
            (Arc::new(move |s| r * th(s).cos() * th(s).sin()), Arc::new(move |s| r * theta(s).cos().powi(2)))
        }
    };
    let floor = MANNHEIM_CURVATURE_FLOOR * r;
    let (grid, _) = crate::numeric::uniform_grid(s_max, check_step);
    for s in grid {
        let k = kappa(s);
        if !(k >= floor) {
            return Err(ProfileError::CurvatureVanishes { s, kappa: k, floor });
        }
    }
    let label = match variant {
        MannheimVariant::T => "mannheim_t",
        MannheimVariant::B => "mannheim_b",
    };
    CurvatureProfile::analytic(label, kappa, tau, None, s_max)
}
