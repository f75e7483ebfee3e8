use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::sphere::conformally_flat_christoffel;
use super::{Christoffel, Geometry};

/// Hyperbolic space of sectional curvature −c in the Poincaré ball of radius
/// 1/√c, with g = (2/(1 − c|x|²))² Id. Exact exp/transport go through the
/// hyperboloid model.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperbolic {
    pub dim: usize,
    pub c: f64,
}

/// Chart points closer than this (in unit-ball coordinates) to the boundary are
/// treated as having left the domain.
const BOUNDARY_MARGIN: f64 = 1e-12;

impl Hyperbolic {
    pub fn new(dim: usize, c: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Contract("hyperbolic space needs d >= 2".into()));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Contract("curvature magnitude c must be positive".into()));
        }
        Ok(Hyperbolic { dim, c })
    }

    pub fn unit(dim: usize) -> Self {
        Hyperbolic { dim, c: 1.0 }
    }

    fn lambda(&self, x: &Vector) -> f64 {
        2.0 / (1.0 - self.c * x.norm_squared())
    }

    /// Unit-ball point to hyperboloid (X₀, X⃗).
    fn to_hyperboloid(b: &Vector) -> (f64, Vector) {
        let s = b.norm_squared();
        let den = 1.0 - s;
        ((1.0 + s) / den, b * (2.0 / den))
    }

    fn tangent_to_hyperboloid(b: &Vector, v: &Vector) -> (f64, Vector) {
        let s = b.norm_squared();
        let den = 1.0 - s;
        let bv = b.dot(v);
        (4.0 * bv / (den * den), v * (2.0 / den) + b * (4.0 * bv / (den * den)))
    }

    fn from_hyperboloid(x0: f64, xv: &Vector) -> Vector {
        xv / (1.0 + x0)
    }

    fn tangent_from_hyperboloid(x0: f64, xv: &Vector, w0: f64, wv: &Vector) -> Vector {
        wv / (1.0 + x0) - xv * (w0 / ((1.0 + x0) * (1.0 + x0)))
    }

    fn minkowski(a0: f64, a: &Vector, b0: f64, b: &Vector) -> f64 {
        -a0 * b0 + a.dot(b)
    }

    /// exp/transport for curvature −1 in unit-ball coordinates.
    fn unit_exp_transport(b: &Vector, v: &Vector, w: &[Vector]) -> (Vector, Vec<Vector>) {
        let (x0, xv) = Self::to_hyperboloid(b);
        let (v0, vv) = Self::tangent_to_hyperboloid(b, v);
        let s = Self::minkowski(v0, &vv, v0, &vv).max(0.0).sqrt();
        if s == 0.0 {
            return (b.clone(), w.to_vec());
        }
        let (u0, uv) = (v0 / s, &vv / s);
        let (sh, ch) = (s.sinh(), s.cosh());
        let y0 = ch * x0 + sh * u0;
        let yv = &xv * ch + &uv * sh;
        let g0 = sh * x0 + ch * u0;
        let gv = &xv * sh + &uv * ch;
        let out = Self::from_hyperboloid(y0, &yv);
        let ws = w
            .iter()
            .map(|wi| {
                let (w0, wv) = Self::tangent_to_hyperboloid(b, wi);
                let a = Self::minkowski(u0, &uv, w0, &wv);
                let t0 = w0 + a * (g0 - u0);
                let tv = &wv + (&gv - &uv) * a;
                Self::tangent_from_hyperboloid(y0, &yv, t0, &tv)
            })
            .collect();
        (out, ws)
    }

    fn unit_distance(a: &Vector, b: &Vector) -> f64 {
        let u = (a - b).norm_squared() / ((1.0 - a.norm_squared()) * (1.0 - b.norm_squared()));
        2.0 * u.sqrt().asinh()
    }

    fn unit_log(a: &Vector, b: &Vector) -> Vector {
        let dist = Self::unit_distance(a, b);
        if dist == 0.0 {
            return Vector::zeros(a.len());
        }
        let (x0, xv) = Self::to_hyperboloid(a);
        let (y0, yv) = Self::to_hyperboloid(b);
        let alpha = dist.cosh();
        let scale = dist / dist.sinh();
        let w0 = scale * (y0 - alpha * x0);
        let wv = (&yv - &xv * alpha) * scale;
        Self::tangent_from_hyperboloid(x0, &xv, w0, &wv)
    }
}

impl Geometry for Hyperbolic {
    fn id(&self) -> String {
        format!("hyperbolic(d={},c={})", self.dim, self.c)
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn origin(&self) -> Vector {
        Vector::zeros(self.dim)
    }
    fn in_domain(&self, x: &Vector) -> bool {
        x.len() == self.dim && x.iter().all(|v| v.is_finite()) && self.c * x.norm_squared() < 1.0 - BOUNDARY_MARGIN
    }
    fn metric(&self, x: &Vector) -> Result<Matrix> {
        let l = self.lambda(x);
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::domain("outside the Poincaré ball", x.as_slice()));
        }
        Ok(Matrix::identity(self.dim, self.dim) * (l * l))
    }
    fn christoffel(&self, x: &Vector) -> Result<Christoffel> {
        let den = 1.0 - self.c * x.norm_squared();
        if !(den > 0.0) {
            return Err(Error::domain("outside the Poincaré ball", x.as_slice()));
        }
        Ok(conformally_flat_christoffel(&(x * (2.0 * self.c / den))))
    }
    fn ricci(&self, x: &Vector) -> Result<Matrix> {
        Ok(self.metric(x)? * (-(self.dim as f64 - 1.0) * self.c))
    }
    fn drift(&self, _x: &Vector) -> Result<Vector> {
        Ok(Vector::zeros(self.dim))
    }
    fn drift_covariant(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::zeros(self.dim, self.dim))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        if !self.in_domain(x) {
            return Err(Error::domain("outside the Poincaré ball", x.as_slice()));
        }
        if !self.in_domain(y) {
            return Err(Error::domain("outside the Poincaré ball", y.as_slice()));
        }
        let sc = self.c.sqrt();
        Ok(Self::unit_distance(&(x * sc), &(y * sc)) / sc)
    }
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        if !self.in_domain(x) {
            return Err(Error::domain("outside the Poincaré ball", x.as_slice()));
        }
        let sc = self.c.sqrt();
        let (b, ws) = Self::unit_exp_transport(&(x * sc), &(v * sc), w);
        let out = b / sc;
        if !self.in_domain(&out) {
            return Err(Error::domain("geodesic reached the ball boundary", out.as_slice()));
        }
        Ok((out, ws))
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let sc = self.c.sqrt();
        Ok(Self::unit_log(&(x * sc), &(y * sc)) / sc)
    }
    fn constant_curvature(&self) -> Option<f64> {
        Some(-self.c)
    }
    fn exact_stepping(&self) -> bool {
        true
    }
    fn radial_laplacian(&self, r: f64) -> Option<f64> {
        let sc = self.c.sqrt();
        Some((self.dim as f64 - 1.0) * sc / (sc * r).tanh())
    }
    fn canonical_frame(&self, x: &Vector) -> Result<Matrix> {
        Ok(Matrix::identity(self.dim, self.dim) / self.lambda(x))
    }
}
