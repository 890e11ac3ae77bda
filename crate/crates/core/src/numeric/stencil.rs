//! Fourth-order finite-difference first derivatives on uniform grids.
//!
//! Interior samples use the 5-point central stencil; the two samples at each
//! end use one-sided 5-point stencils of the same order. A non-finite input
//! poisons every output whose stencil touches it, so undefined samples
//! propagate their footprint instead of silently producing garbage.

use std::ops::{Add, Mul};

const CENTRAL: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const FORWARD_0: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
const FORWARD_1: [f64; 5] = [-3.0, -10.0, 18.0, -6.0, 1.0];

/// Minimum number of samples a 5-point stencil needs.
pub const MIN_SAMPLES: usize = 5;

fn combine<T>(window: &[T], weights: &[f64; 5], scale: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let mut acc = window[0] * (weights[0] * scale);
    for (value, weight) in window.iter().zip(weights.iter()).skip(1) {
        acc = acc + *value * (weight * scale);
    }
    acc
}

/// d/dt of samples spaced `h` apart. Panics if fewer than [`MIN_SAMPLES`].
pub fn derivative<T>(values: &[T], h: f64) -> Vec<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    assert!(n >= MIN_SAMPLES, "stencil needs at least {MIN_SAMPLES} samples, got {n}");
    let scale = 1.0 / (12.0 * h);
    let mut out = Vec::with_capacity(n);
    let head = &values[..5];
    out.push(combine(head, &FORWARD_0, scale));
    out.push(combine(head, &FORWARD_1, scale));
    for i in 2..n - 2 {
        out.push(combine(&values[i - 2..=i + 2], &CENTRAL, scale));
    }
    // Backward stencils are the forward ones mirrored with a sign flip.
    let tail = &values[n - 5..];
    let mirror = |w: &[f64; 5]| -> [f64; 5] { [-w[4], -w[3], -w[2], -w[1], -w[0]] };
    out.push(combine(tail, &mirror(&FORWARD_1), scale));
    out.push(combine(tail, &mirror(&FORWARD_0), scale));
    out
}

/// Unwraps a sequence of angles so consecutive samples differ by less than π.
pub fn unwrap_angles(angles: &mut [f64]) {
    use std::f64::consts::{PI, TAU};
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for a in angles.iter_mut() {
        if !a.is_finite() {
            continue;
        }
        let raw = *a;
        if let Some(p) = prev {
            let mut d = raw + offset - p;
            while d > PI {
                offset -= TAU;
                d -= TAU;
            }
            while d < -PI {
                offset += TAU;
                d += TAU;
            }
        }
        *a = raw + offset;
        prev = Some(*a);
    }
}
