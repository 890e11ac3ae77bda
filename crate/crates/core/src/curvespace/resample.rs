use nalgebra::Vector3;

use super::{CurveError, SampledCurve};
use crate::numeric::quadrature::gauss_legendre;
use crate::numeric::spline::CubicSpline;

/// Cubic spline through the points, parametrized by cumulative chord length.
struct ChordSpline {
    axes: [CubicSpline; 3],
}

impl ChordSpline {
    fn position(&self, t: f64) -> Vector3<f64> {
        Vector3::new(self.axes[0].eval(t), self.axes[1].eval(t), self.axes[2].eval(t))
    }

    fn speed(&self, t: f64) -> f64 {
        Vector3::new(self.axes[0].derivative(t), self.axes[1].derivative(t), self.axes[2].derivative(t)).norm()
    }

    fn knots(&self) -> &[f64] {
        self.axes[0].knots()
    }

    /// Arc length along the spline from knot `j` to parameter `t`.
    fn arc(&self, j: usize, t: f64) -> f64 {
        let a = self.knots()[j];
        let mid = 0.5 * (a + t);
        gauss_legendre(|x| self.speed(x), a, mid) + gauss_legendre(|x| self.speed(x), mid, t)
    }

    /// Parameter in segment `j` where the arc length from knot `j` equals `target`.
    fn invert(&self, j: usize, target: f64, seg_len: f64) -> f64 {
        let (a, b) = (self.knots()[j], self.knots()[j + 1]);
        if target <= 0.0 {
            return a;
        }
        if target >= seg_len {
            return b;
        }
        let (mut lo, mut hi) = (a, b);
        let mut t = a + (b - a) * target / seg_len;
        for _ in 0..60 {
            let g = self.arc(j, t) - target;
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let sp = self.speed(t);
            let mut next = if sp > 0.0 { t - g / sp } else { 0.5 * (lo + hi) };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= 1e-15 * (b - a).max(t.abs()) {
                return next;
            }
            t = next;
        }
        t
    }
}

/// Resamples a polyline at uniform arc-length `step`.
///
/// The points are interpolated by a clamped cubic spline over cumulative
/// chord length; the spline's own arc length (Gauss-Legendre) is inverted
/// with safeguarded Newton iterations. Samples run from s = 0 up to the last
/// multiple of `step` not exceeding the total length.
pub fn resample_by_arclength(points: &[Vector3<f64>], step: f64) -> Result<SampledCurve, CurveError> {
    resample_with_knots(points, step).map(|(curve, _)| curve)
}

/// Like [`resample_by_arclength`], also returning the arc length at every
/// input point (the parameter correspondence between input and output).
pub fn resample_with_knots(points: &[Vector3<f64>], step: f64) -> Result<(SampledCurve, Vec<f64>), CurveError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CurveError::InvalidStep(step));
    }
    if points.len() < 4 {
        return Err(CurveError::TooFewPoints { got: points.len() });
    }
    if let Some(index) = points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(CurveError::NonFinite { index });
    }
    let mut chord = Vec::with_capacity(points.len());
    chord.push(0.0);
    for (index, pair) in points.windows(2).enumerate() {
        let d = (pair[1] - pair[0]).norm();
        if d == 0.0 {
            return Err(CurveError::DuplicatePoints { index });
        }
        chord.push(chord[index] + d);
    }
    let axis = |c: usize| {
        CubicSpline::new(chord.clone(), points.iter().map(|p| p[c]).collect()).expect("chord knots strictly increase")
    };
    let spline = ChordSpline { axes: [axis(0), axis(1), axis(2)] };

    let mut knot_arc = Vec::with_capacity(points.len());
    knot_arc.push(0.0);
    for j in 0..points.len() - 1 {
        let len = spline.arc(j, chord[j + 1]);
        knot_arc.push(knot_arc[j] + len);
    }
    let total = *knot_arc.last().expect("non-empty");
    if total < 10.0 * step {
        return Err(CurveError::DegenerateInput { length: total, step });
    }

    let count = (total / step + 1e-9).floor() as usize + 1;
    let mut out = Vec::with_capacity(count);
    let mut j = 0;
    for k in 0..count {
        let s = (k as f64 * step).min(total);
        while j + 2 < knot_arc.len() && knot_arc[j + 1] < s {
            j += 1;
        }
        let t = spline.invert(j, s - knot_arc[j], knot_arc[j + 1] - knot_arc[j]);
        out.push(spline.position(t));
    }
    let curve = SampledCurve::new(0.0, step, out)?;
    Ok((curve, knot_arc))
}
