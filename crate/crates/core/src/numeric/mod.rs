//! Shared numerical building blocks.

pub mod fit;
pub mod frame;
pub mod quadrature;
pub mod spline;
pub mod stencil;

pub use frame::Frame;

/// Uniform grid on `[0, s_max]` whose spacing is the largest value ≤ `step`
/// that divides `s_max` evenly.
pub fn uniform_grid(s_max: f64, step: f64) -> (Vec<f64>, f64) {
    let intervals = ((s_max / step) - 1e-9).ceil().max(1.0) as usize;
    let h = s_max / intervals as f64;
    let grid = (0..=intervals).map(|k| if k == intervals { s_max } else { k as f64 * h }).collect();
    (grid, h)
}
