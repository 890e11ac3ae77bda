//! Linear least-squares fits used by the checks: spheres, planes and
//! two-term sinusoids.

use nalgebra::{DMatrix, DVector, Vector3};

/// Minimum-norm least-squares solution of `a x ≈ b`.
pub fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    let max_sv = svd.singular_values.max();
    svd.solve(b, max_sv * 1e-12).expect("u and v_t were requested")
}

#[derive(Debug, Clone, Copy)]
pub struct SphereFit {
    pub center: Vector3<f64>,
    pub radius: f64,
    /// max |‖p − c‖ − r| / r
    pub residual: f64,
}

/// Algebraic sphere fit: |p|² = 2 c·p + k with r² = k + |c|².
///
/// Coplanar inputs make the system rank deficient; the minimum-norm
/// solution then picks the sphere centred in the plane, which still passes
/// through every point of a circle.
pub fn fit_sphere(points: &[Vector3<f64>]) -> SphereFit {
    let n = points.len();
    let mean = points.iter().sum::<Vector3<f64>>() / n as f64;
    let mut a = DMatrix::zeros(n, 4);
    let mut b = DVector::zeros(n);
    for (i, p) in points.iter().enumerate() {
        let q = p - mean;
        a[(i, 0)] = 2.0 * q.x;
        a[(i, 1)] = 2.0 * q.y;
        a[(i, 2)] = 2.0 * q.z;
        a[(i, 3)] = 1.0;
        b[i] = q.norm_squared();
    }
    let x = least_squares(&a, &b);
    let c = Vector3::new(x[0], x[1], x[2]);
    let radius = (x[3] + c.norm_squared()).max(0.0).sqrt();
    let center = c + mean;
    let residual = points
        .iter()
        .map(|p| ((p - center).norm() - radius).abs())
        .fold(0.0, f64::max)
        / radius;
    SphereFit { center, radius, residual }
}

/// Max distance of the points from their total-least-squares plane.
pub fn plane_residual(points: &[Vector3<f64>]) -> f64 {
    let n = points.len();
    let mean = points.iter().sum::<Vector3<f64>>() / n as f64;
    let mut cov = nalgebra::Matrix3::zeros();
    for p in points {
        let q = p - mean;
        cov += q * q.transpose();
    }
    let eig = cov.symmetric_eigen();
    let (idx, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let normal: Vector3<f64> = eig.eigenvectors.column(idx).into();
    points.iter().map(|p| (p - mean).dot(&normal).abs()).fold(0.0, f64::max)
}

/// Fit y ≈ A cos x + B sin x; returns (A, B).
pub fn fit_cos_sin(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len();
    let a = DMatrix::from_fn(n, 2, |i, j| if j == 0 { x[i].cos() } else { x[i].sin() });
    let b = DVector::from_column_slice(y);
    let sol = least_squares(&a, &b);
    (sol[0], sol[1])
}

/// Max pointwise gap between `a` and `b` after the best rigid motion
/// (rotation + translation, no reflection) maps `a` onto `b`.
pub fn rigid_alignment_gap(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    let n = a.len().min(b.len());
    let ca = a[..n].iter().sum::<Vector3<f64>>() / n as f64;
    let cb = b[..n].iter().sum::<Vector3<f64>>() / n as f64;
    let mut h = nalgebra::Matrix3::zeros();
    for (p, q) in a.iter().zip(b) {
        h += (p - ca) * (q - cb).transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let mut d = nalgebra::Matrix3::identity();
    d[(2, 2)] = (vt.transpose() * u.transpose()).determinant().signum();
    let rot = vt.transpose() * d * u.transpose();
    a.iter().zip(b).map(|(p, q)| (rot * (p - ca) + cb - q).norm()).fold(0.0, f64::max)
}
