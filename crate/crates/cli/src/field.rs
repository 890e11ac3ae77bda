//! Field spec `u=<expr>,v=<expr>,w=<expr>` with `expr` a constant or
//! `[c*]sin(a*s+b)` / `[c*]cos(a*s+b)`. Missing components are 0.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use curvekit::mannheim::FrameVectorField;
use regex::Regex;

const NUM: &str = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?";
const UNSIGNED: &str = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expr {
    Const(f64),
    /// amp · sin(a s + b), or cos when `cos` is set.
    Wave { amp: f64, cos: bool, a: f64, b: f64 },
}

impl Expr {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            Expr::Const(c) => c,
            Expr::Wave { amp, cos: true, a, b } => amp * (a * s + b).cos(),
            Expr::Wave { amp, cos: false, a, b } => amp * (a * s + b).sin(),
        }
    }

    fn scaled(self, k: f64) -> Self {
        match self {
            Expr::Const(c) => Expr::Const(c * k),
            Expr::Wave { amp, cos, a, b } => Expr::Wave { amp: amp * k, cos, a, b },
        }
    }
}

fn const_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(&format!("^{NUM}$")).unwrap())
}

fn wave_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(&format!(r"^(?:({NUM})\*)?(sin|cos)\((?:({NUM})\*)?s(?:([+-])({UNSIGNED}))?\)$")).unwrap()
    })
}

fn num(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("bad number {s:?}"))
}

pub fn parse_expr(text: &str) -> Result<Expr, String> {
    if const_re().is_match(text) {
        return Ok(Expr::Const(num(text)?));
    }
    let caps = wave_re()
        .captures(text)
        .ok_or_else(|| format!("cannot parse {text:?}; expected a constant, sin(a*s+b) or cos(a*s+b)"))?;
    let amp = caps.get(1).map_or(Ok(1.0), |m| num(m.as_str()))?;
    let cos = &caps[2] == "cos";
    let a = caps.get(3).map_or(Ok(1.0), |m| num(m.as_str()))?;
    let mut b = caps.get(5).map_or(Ok(0.0), |m| num(m.as_str()))?;
    if caps.get(4).is_some_and(|m| m.as_str() == "-") {
        b = -b;
    }
    let e = Expr::Wave { amp, cos, a, b };
    if !(amp.is_finite() && a.is_finite() && b.is_finite()) {
        return Err(format!("non-finite coefficient in {text:?}"));
    }
    Ok(if a == 0.0 { Expr::Const(e.eval(0.0)) } else { e })
}

/// Parsed and normalized field components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub u: Expr,
    pub v: Expr,
    pub w: Expr,
}

/// Squared norm as constant part plus the oscillating phasors per
/// frequency; the norm is constant iff every phasor sum vanishes.
fn norm_squared(exprs: &[Expr]) -> Result<f64, String> {
    let mut constant = 0.0;
    let mut scale = 0.0;
    let mut phasors: Vec<(f64, f64, f64)> = Vec::new();
    for e in exprs {
        match *e {
            Expr::Const(c) => constant += c * c,
            Expr::Wave { amp, cos, a, b } => {
                // sin² = (1 − cos 2x)/2, cos² = (1 + cos 2x)/2
                let half = amp * amp / 2.0;
                constant += half;
                scale += half;
                let coef = if cos { half } else { -half };
                let (f, phase) = (2.0 * a.abs(), 2.0 * b * a.signum());
                let (re, im) = (coef * phase.cos(), coef * phase.sin());
                match phasors.iter_mut().find(|p| (p.0 - f).abs() <= 1e-12 * f) {
                    Some(p) => {
                        p.1 += re;
                        p.2 += im;
                    }
                    None => phasors.push((f, re, im)),
                }
            }
        }
    }
    for (f, re, im) in phasors {
        if re.hypot(im) > 1e-12 * scale.max(1.0) {
            return Err(format!(
                "field norm is not constant (oscillation of amplitude {:e} at frequency {f})",
                re.hypot(im)
            ));
        }
    }
    if !(constant > 0.0 && constant.is_finite()) {
        return Err("field vanishes identically".into());
    }
    Ok(constant)
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = BTreeMap::new();
        for item in text.split(',') {
            let (name, expr) = item.split_once('=').ok_or_else(|| format!("expected name=expr, got {item:?}"))?;
            if !matches!(name, "u" | "v" | "w") {
                return Err(format!("unknown component {name:?}; use u, v, w"));
            }
            if parts.insert(name.to_string(), parse_expr(expr)?).is_some() {
                return Err(format!("component {name} given twice"));
            }
        }
        let get = |n: &str| parts.get(n).copied().unwrap_or(Expr::Const(0.0));
        let (u, v, w) = (get("u"), get("v"), get("w"));
        let norm = norm_squared(&[u, v, w])?.sqrt();
        Ok(Self { u: u.scaled(1.0 / norm), v: v.scaled(1.0 / norm), w: w.scaled(1.0 / norm) })
    }

    pub fn constant(&self) -> Option<(f64, f64, f64)> {
        match (self.u, self.v, self.w) {
            (Expr::Const(u), Expr::Const(v), Expr::Const(w)) => Some((u, v, w)),
            _ => None,
        }
    }

    /// The field, with unit norm checked on `grid` when it varies.
    pub fn field(&self, grid: &[f64]) -> Result<FrameVectorField, String> {
        let r = match self.constant() {
            Some((u, v, w)) => FrameVectorField::constant(u, v, w),
            None => {
                let (u, v, w) = (self.u, self.v, self.w);
                FrameVectorField::from_fns(
                    Arc::new(move |s| u.eval(s)),
                    Arc::new(move |s| v.eval(s)),
                    Arc::new(move |s| w.eval(s)),
                    grid,
                )
            }
        };
        r.map_err(|e| e.to_string())
    }

    pub fn v(&self) -> Expr {
        self.v
    }
}
