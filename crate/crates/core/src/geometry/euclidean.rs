use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::{Christoffel, Drift, Geometry};

/// ℝ^d with the flat metric and a drift.
#[derive(Debug, Clone, PartialEq)]
pub struct Euclidean {
    pub dim: usize,
    pub drift: Drift,
}

impl Euclidean {
    pub fn new(dim: usize, drift: Drift) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Contract("dimension must be positive".into()));
        }
        if matches!(drift, Drift::Spiral { .. }) && dim < 2 {
            return Err(Error::Contract("spiral drift needs d >= 2".into()));
        }
        Ok(Euclidean { dim, drift })
    }

    pub fn flat(dim: usize) -> Self {
        Euclidean { dim, drift: Drift::Zero }
    }
}

impl Geometry for Euclidean {
    fn id(&self) -> String {
        format!("euclidean(d={},{})", self.dim, self.drift.id())
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn origin(&self) -> Vector {
        Vector::zeros(self.dim)
    }
    fn in_domain(&self, x: &Vector) -> bool {
        x.len() == self.dim && x.iter().all(|v| v.is_finite())
    }
    fn metric(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::identity(self.dim, self.dim))
    }
    fn christoffel(&self, _x: &Vector) -> Result<Christoffel> {
        Ok(Christoffel::zeros(self.dim))
    }
    fn ricci(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::zeros(self.dim, self.dim))
    }
    fn drift(&self, x: &Vector) -> Result<Vector> {
        let z = self.drift.value(x);
        if !crate::linalg::all_finite(z.as_slice()) {
            return Err(Error::eval("drift", x.as_slice()));
        }
        Ok(z)
    }
    fn drift_covariant(&self, x: &Vector) -> Result<Matrix> {
        Ok(self.drift.jacobian(x))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        Ok((x - y).norm())
    }
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        Ok((x + v, w.to_vec()))
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        Ok(y - x)
    }
    fn constant_curvature(&self) -> Option<f64> {
        Some(0.0)
    }
    fn radial_laplacian(&self, r: f64) -> Option<f64> {
        Some((self.dim as f64 - 1.0) / r)
    }
    fn canonical_frame(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::identity(self.dim, self.dim))
    }
}
