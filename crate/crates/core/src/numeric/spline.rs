//! Clamped C² cubic splines on arbitrary increasing knots.
//!
//! End slopes come from the cubic through the four outermost knots, which
//! keeps the interpolant fourth-order accurate up to the ends (a natural
//! spline would force zero second derivative there).

/// Scalar cubic spline in Hermite form (values and slopes at the knots).
#[derive(Debug, Clone)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
    cumulative: Vec<f64>,
}

/// Slope at `knots[at]` of the Lagrange cubic through `knots[idx]`.
fn lagrange_slope(knots: &[f64], values: &[f64], idx: [usize; 4], at: usize) -> f64 {
    let x = knots[at];
    let mut total = 0.0;
    for &j in &idx {
        let xj = knots[j];
        let mut denom = 1.0;
        for &k in &idx {
            if k != j {
                denom *= xj - knots[k];
            }
        }
        // d/dx of prod_{k != j} (x - x_k)
        let mut deriv = 0.0;
        for &m in &idx {
            if m == j {
                continue;
            }
            let mut term = 1.0;
            for &k in &idx {
                if k != j && k != m {
                    term *= x - knots[k];
                }
            }
            deriv += term;
        }
        total += values[j] * deriv / denom;
    }
    total
}

/// Solves a tridiagonal system in place (Thomas algorithm).
fn solve_tridiagonal(lower: &[f64], diag: &mut [f64], upper: &[f64], rhs: &mut [f64]) {
    let n = diag.len();
    for i in 1..n {
        let m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

impl CubicSpline {
    /// Builds the spline. Requires at least 4 strictly increasing knots.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Option<Self> {
        let n = knots.len();
        if n < 4 || values.len() != n || knots.windows(2).any(|w| !(w[1] > w[0])) {
            return None;
        }
        let m0 = lagrange_slope(&knots, &values, [0, 1, 2, 3], 0);
        let mn = lagrange_slope(&knots, &values, [n - 4, n - 3, n - 2, n - 1], n - 1);
        let mut slopes = vec![0.0; n];
        slopes[0] = m0;
        slopes[n - 1] = mn;
        if n > 2 {
            let inner = n - 2;
            let mut lower = vec![0.0; inner];
            let mut diag = vec![0.0; inner];
            let mut upper = vec![0.0; inner];
            let mut rhs = vec![0.0; inner];
            for r in 0..inner {
                let i = r + 1;
                let hl = knots[i] - knots[i - 1];
                let hr = knots[i + 1] - knots[i];
                let dl = (values[i] - values[i - 1]) / hl;
                let dr = (values[i + 1] - values[i]) / hr;
                lower[r] = hr;
                diag[r] = 2.0 * (hl + hr);
                upper[r] = hl;
                rhs[r] = 3.0 * (hr * dl + hl * dr);
            }
            rhs[0] -= lower[0] * m0;
            rhs[inner - 1] -= upper[inner - 1] * mn;
            solve_tridiagonal(&lower, &mut diag, &upper, &mut rhs);
            slopes[1..n - 1].copy_from_slice(&rhs);
        }
        let mut cumulative = Vec::with_capacity(n);
        cumulative.push(0.0);
        for i in 0..n - 1 {
            let h = knots[i + 1] - knots[i];
            let piece = h * (values[i] + values[i + 1]) / 2.0 + h * h * (slopes[i] - slopes[i + 1]) / 12.0;
            cumulative.push(cumulative[i] + piece);
        }
        Some(Self { knots, values, slopes, cumulative })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// Index of the interval containing `x` (clamped to the valid range).
    pub fn segment(&self, x: f64) -> usize {
        let n = self.knots.len();
        match self.knots.binary_search_by(|k| k.partial_cmp(&x).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    fn local(&self, x: f64) -> (usize, f64, f64) {
        let i = self.segment(x);
        let h = self.knots[i + 1] - self.knots[i];
        (i, (x - self.knots[i]) / h, h)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (i, t, h) = self.local(x);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[i] + h10 * h * self.slopes[i] + h01 * self.values[i + 1] + h11 * h * self.slopes[i + 1]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (i, t, h) = self.local(x);
        let t2 = t * t;
        let d00 = 6.0 * t2 - 6.0 * t;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = -6.0 * t2 + 6.0 * t;
        let d11 = 3.0 * t2 - 2.0 * t;
        (d00 * self.values[i] + d01 * self.values[i + 1]) / h + d10 * self.slopes[i] + d11 * self.slopes[i + 1]
    }

    /// ∫ from the first knot to `x`, exact for the piecewise cubic.
    pub fn integral(&self, x: f64) -> f64 {
        let (i, t, h) = self.local(x);
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let i00 = t4 / 2.0 - t3 + t;
        let i10 = t4 / 4.0 - 2.0 * t3 / 3.0 + t2 / 2.0;
        let i01 = -t4 / 2.0 + t3;
        let i11 = t4 / 4.0 - t3 / 3.0;
        self.cumulative[i]
            + h * (i00 * self.values[i] + i10 * h * self.slopes[i] + i01 * self.values[i + 1] + i11 * h * self.slopes[i + 1])
    }
}
