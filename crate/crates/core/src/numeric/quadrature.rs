//! Quadrature on uniform grids and for callable integrands.

use std::ops::{Add, Mul};

/// Cumulative integral of uniformly spaced samples, `out[0] = 0`.
///
/// Each interval is integrated exactly for the cubic through its four
/// nearest samples (Simpson-class, fourth order), so every node gets a value
/// without the even/odd asymmetry of composite Simpson.
pub fn cumulative<T>(values: &[T], h: f64, zero: T) -> Vec<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    out.push(zero);
    if n < 2 {
        return out;
    }
    if n < 4 {
        // Trapezoid fallback for tiny inputs.
        for k in 1..n {
            let prev = out[k - 1];
            out.push(prev + (values[k - 1] + values[k]) * (0.5 * h));
        }
        return out;
    }
    let w = h / 24.0;
    for k in 0..n - 1 {
        let piece = if k == 0 {
            values[0] * (9.0 * w) + values[1] * (19.0 * w) + values[2] * (-5.0 * w) + values[3] * w
        } else if k == n - 2 {
            values[n - 4] * w + values[n - 3] * (-5.0 * w) + values[n - 2] * (19.0 * w) + values[n - 1] * (9.0 * w)
        } else {
            values[k - 1] * (-w) + values[k] * (13.0 * w) + values[k + 1] * (13.0 * w) + values[k + 2] * (-w)
        };
        let prev = out[k];
        out.push(prev + piece);
    }
    out
}

/// Cumulative integral of a scalar function over `grid`, one Simpson panel per
/// grid interval (the integrand is evaluated at interval midpoints).
pub fn cumulative_simpson_fn(f: impl Fn(f64) -> f64, grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    out.push(0.0);
    for pair in grid.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        acc += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
        out.push(acc);
    }
    out
}

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL5_NODES
        .iter()
        .zip(GL5_WEIGHTS.iter())
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cumulative_is_exact_for_cubics() {
        let h = 0.25;
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x + x * x * x;
        let fi = |x: f64| x - x * x + x.powi(3) / 6.0 + x.powi(4) / 4.0;
        let ys: Vec<f64> = (0..9).map(|i| f(i as f64 * h)).collect();
        let c = cumulative(&ys, h, 0.0);
        for (i, v) in c.iter().enumerate() {
            assert!((v - fi(i as f64 * h)).abs() < 1e-12);
        }
    }

    #[test]
    fn cumulative_sine_matches_antiderivative() {
        let h = 1e-3;
        let ys: Vec<f64> = (0..=3000).map(|i| (i as f64 * h).sin()).collect();
        let c = cumulative(&ys, h, 0.0);
        let err = c
            .iter()
            .enumerate()
            .map(|(i, v)| (v - (1.0 - (i as f64 * h).cos())).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn simpson_fn_and_gauss() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01).collect();
        let c = cumulative_simpson_fn(f64::exp, &grid);
        assert!((c[100] - (1f64.exp() - 1.0)).abs() < 1e-11);
        let g = gauss_legendre(|x| x.powi(9), 0.0, 1.0);
        assert!((g - 0.1).abs() < 1e-14);
    }
}
