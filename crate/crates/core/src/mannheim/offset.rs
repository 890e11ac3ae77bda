use super::MannheimError;
use crate::numeric::quadrature::cumulative_simpson_fn;
use crate::numeric::stencil::derivative;
use crate::numeric::uniform_grid;

/// Offset λ(s) = λ₀ − ∫₀ˢ v(u) du sampled on a grid, with λ' = −v at the
/// nodes for Hermite interpolation in between.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetFunction {
    lambda0: f64,
    s: Vec<f64>,
    values: Vec<f64>,
    slope: Vec<f64>,
}

/// λ(s) = λ₀ − ∫₀ˢ v by composite Simpson on the uniform grid of `[0, s_max]`
/// with spacing ≤ `step` (the grid used by the Frenet integrator).
pub fn lambda_from_v(v: &dyn Fn(f64) -> f64, lambda0: f64, s_max: f64, step: f64) -> OffsetFunction {
    let (grid, _) = uniform_grid(s_max, step);
    OffsetFunction::on_grid(v, lambda0, &grid)
}

impl OffsetFunction {
    /// λ from v on an arbitrary increasing grid starting at 0.
    pub fn on_grid(v: &dyn Fn(f64) -> f64, lambda0: f64, grid: &[f64]) -> Self {
        let integral = cumulative_simpson_fn(v, grid);
        Self {
            lambda0,
            s: grid.to_vec(),
            values: integral.iter().map(|i| lambda0 - i).collect(),
            slope: grid.iter().map(|&s| -v(s)).collect(),
        }
    }

    pub fn constant(lambda: f64, grid: &[f64]) -> Self {
        Self { lambda0: lambda, s: grid.to_vec(), values: vec![lambda; grid.len()], slope: vec![0.0; grid.len()] }
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// λ' at the nodes (= −v).
    pub fn slope(&self) -> &[f64] {
        &self.slope
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// λ(s) by cubic Hermite interpolation; outside the grid is an error.
    pub fn value(&self, s: f64) -> Result<f64, MannheimError> {
        let n = self.s.len();
        let (a, b) = (self.s[0], self.s[n - 1]);
        let slack = 1e-12 * b.abs().max(1.0);
        if !(s >= a - slack && s <= b + slack) {
            return Err(MannheimError::DomainMismatch(format!("λ evaluated at {s} outside [{a}, {b}]")));
        }
        let k = self.s.partition_point(|&x| x <= s).clamp(1, n - 1) - 1;
        let h = self.s[k + 1] - self.s[k];
        let t = ((s - self.s[k]) / h).clamp(0.0, 1.0);
        let (t2, t3) = (t * t, t * t * t);
        Ok((2.0 * t3 - 3.0 * t2 + 1.0) * self.values[k]
            + (t3 - 2.0 * t2 + t) * h * self.slope[k]
            + (-2.0 * t3 + 3.0 * t2) * self.values[k + 1]
            + (t3 - t2) * h * self.slope[k + 1])
    }

    /// Max |dλ/ds + v| with dλ/ds by the 5-point stencil on a uniform grid.
    pub fn slope_defect(&self) -> f64 {
        let n = self.s.len();
        if n < 5 {
            return 0.0;
        }
        let h = (self.s[n - 1] - self.s[0]) / (n - 1) as f64;
        derivative(&self.values, h).iter().zip(&self.slope).map(|(d, s)| (d - s).abs()).fold(0.0, f64::max)
    }
}
