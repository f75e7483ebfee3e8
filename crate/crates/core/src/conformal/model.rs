use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{geodesic_exp_transport, geodesic_log, Christoffel, Euclidean, Geometry};
use crate::linalg::{Matrix, Vector};

use super::formulas::{conformal_christoffel, conformal_ricci, transformed_drift, NEAR_BOUNDARY};
use super::ConformalFactor;

/// (ℝ^d, f⁻²·Id) with drift Z′ = f²Z + (d−2)f∇f. Geodesics are integrated by
/// RK4 and distances come from Newton shooting.
#[derive(Debug, Clone)]
pub struct ConformalModel {
    pub base: Euclidean,
    pub factor: Arc<dyn ConformalFactor>,
}

impl ConformalModel {
    pub fn new(base: Euclidean, factor: Arc<dyn ConformalFactor>) -> Result<Self> {
        let o = base.origin();
        if !(factor.value(&o) > NEAR_BOUNDARY) {
            return Err(Error::Contract("conformal factor vanishes at the origin".into()));
        }
        Ok(ConformalModel { base, factor })
    }

    /// Jacobian of Z′: 2f Z∇fᵀ + f²J_Z + (d−2)(∇f∇fᵀ + f Hess f).
    pub fn drift_jacobian(&self, x: &Vector) -> Result<Matrix> {
        let f = self.factor.value(x);
        let df = self.factor.gradient(x);
        let h = self.factor.hessian(x);
        let z = self.base.drift(x)?;
        let jz = self.base.drift.jacobian(x);
        let d = x.len() as f64;
        Ok((&z * df.transpose()) * (2.0 * f) + jz * (f * f) + ((&df * df.transpose()) + h * f) * (d - 2.0))
    }
}

impl Geometry for ConformalModel {
    fn id(&self) -> String {
        format!("conformal(d={},{},{})", self.base.dim, self.base.drift.id(), self.factor.id())
    }
    fn dim(&self) -> usize {
        self.base.dim
    }
    fn origin(&self) -> Vector {
        self.base.origin()
    }
    fn in_domain(&self, x: &Vector) -> bool {
        self.base.in_domain(x) && self.factor.value(x) > NEAR_BOUNDARY
    }
    fn metric(&self, x: &Vector) -> Result<Matrix> {
        let f = self.factor.value(x);
        if !(f > NEAR_BOUNDARY) {
            return Err(Error::NearBoundary { value: f, point: x.as_slice().to_vec() });
        }
        Ok(Matrix::identity(self.base.dim, self.base.dim) / (f * f))
    }
    fn christoffel(&self, x: &Vector) -> Result<Christoffel> {
        conformal_christoffel(&self.base, self.factor.as_ref(), x)
    }
    fn ricci(&self, x: &Vector) -> Result<Matrix> {
        conformal_ricci(&self.base, self.factor.as_ref(), x)
    }
    fn drift(&self, x: &Vector) -> Result<Vector> {
        transformed_drift(&self.base, self.factor.as_ref(), x)
    }
    fn drift_covariant(&self, x: &Vector) -> Result<Matrix> {
        let z = self.drift(x)?;
        Ok(self.drift_jacobian(x)? + self.christoffel(x)?.contract_last(&z))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        if x == y {
            return Ok(0.0);
        }
        let v = self.log(x, y)?;
        Ok(crate::linalg::norm_g(&self.metric(x)?, &v))
    }
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        geodesic_exp_transport(self, x, v, w)
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        geodesic_log(self, x, y)
    }
    fn constant_curvature(&self) -> Option<f64> {
        None
    }
    fn canonical_frame(&self, x: &Vector) -> Result<Matrix> {
        let f = self.factor.value(x);
        Ok(Matrix::identity(self.base.dim, self.base.dim) * f)
    }
}
