use nalgebra::{Matrix3, Vector3};

/// Orthonormal right-handed triple (T, N, B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub t: Vector3<f64>,
    pub n: Vector3<f64>,
    pub b: Vector3<f64>,
}

impl Frame {
    pub fn identity() -> Self {
        Self { t: Vector3::x(), n: Vector3::y(), b: Vector3::z() }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.t, self.n, self.b])
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self { t: m.column(0).into(), n: m.column(1).into(), b: m.column(2).into() }
    }

    /// Nearest orthogonal matrix (polar factor) to the current columns.
    pub fn orthonormalized(&self) -> Self {
        Self::from_matrix(&nearest_orthogonal(&self.matrix()))
    }

    /// Max |G - I| entry of the Gram matrix.
    pub fn gram_deviation(&self) -> f64 {
        let m = self.matrix();
        (m.transpose() * m - Matrix3::identity()).abs().max()
    }

    pub fn handedness(&self) -> f64 {
        self.t.dot(&self.n.cross(&self.b))
    }

    pub fn is_finite(&self) -> bool {
        self.t.iter().chain(self.n.iter()).chain(self.b.iter()).all(|v| v.is_finite())
    }
}

/// Polar factor U Vᵀ of the SVD M = U Σ Vᵀ.
pub fn nearest_orthogonal(m: &Matrix3<f64>) -> Matrix3<f64> {
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    u * v_t
}
