use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::{Christoffel, Geometry};

/// Round sphere of radius R carried in embedded coordinates of ℝ^{d+1}.
/// The reference point is the south pole (0, …, 0, −R).
#[derive(Debug, Clone, PartialEq)]
pub struct Sphere {
    pub dim: usize,
    pub radius: f64,
}

impl Sphere {
    pub fn new(dim: usize, radius: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Contract("sphere needs d >= 2".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Contract("sphere radius must be positive".into()));
        }
        Ok(Sphere { dim, radius })
    }

    pub fn unit(dim: usize) -> Self {
        Sphere { dim, radius: 1.0 }
    }

    pub fn curvature(&self) -> f64 {
        1.0 / (self.radius * self.radius)
    }

    /// Stereographic chart from the north pole.
    pub fn chart(&self) -> StereographicSphere {
        StereographicSphere { dim: self.dim, radius: self.radius }
    }

    fn angle(&self, x: &Vector, y: &Vector) -> f64 {
        let r = self.radius;
        let chord = (x - y).norm() / (2.0 * r);
        if chord <= std::f64::consts::FRAC_1_SQRT_2 {
            2.0 * chord.min(1.0).asin()
        } else {
            let anti = ((x + y).norm() / (2.0 * r)).min(1.0);
            std::f64::consts::PI - 2.0 * anti.asin()
        }
    }
}

impl Geometry for Sphere {
    fn id(&self) -> String {
        format!("sphere(d={},R={})", self.dim, self.radius)
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn ambient_dim(&self) -> usize {
        self.dim + 1
    }
    fn origin(&self) -> Vector {
        let mut o = Vector::zeros(self.dim + 1);
        o[self.dim] = -self.radius;
        o
    }
    fn in_domain(&self, x: &Vector) -> bool {
        x.len() == self.dim + 1
            && x.iter().all(|v| v.is_finite())
            && (x.norm() - self.radius).abs() <= 1e-6 * self.radius
    }
    fn metric(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::identity(self.dim + 1, self.dim + 1))
    }
    fn christoffel(&self, _x: &Vector) -> Result<Christoffel> {
        Err(Error::Unsupported(
            "embedded sphere has no chart Christoffel symbols; use Sphere::chart()".into(),
        ))
    }
    fn ricci(&self, _x: &Vector) -> Result<Matrix> {
        let n = self.dim + 1;
        Ok(Matrix::identity(n, n) * ((self.dim as f64 - 1.0) * self.curvature()))
    }
    fn drift(&self, _x: &Vector) -> Result<Vector> {
        Ok(Vector::zeros(self.dim + 1))
    }
    fn drift_covariant(&self, _x: &Vector) -> Result<Matrix> {
        Ok(Matrix::zeros(self.dim + 1, self.dim + 1))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        Ok(self.radius * self.angle(x, y))
    }
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        let r = self.radius;
        let s = v.norm();
        if s == 0.0 {
            return Ok((x.clone(), w.to_vec()));
        }
        let vh = v / s;
        let xh = x / r;
        let (sn, cs) = (s / r).sin_cos();
        let mut p = &xh * (r * cs) + &vh * (r * sn);
        let n = p.norm();
        p *= r / n;
        // unit velocity at the end of the arc
        let vend = &xh * (-sn) + &vh * cs;
        let transported = w
            .iter()
            .map(|wi| {
                let a = vh.dot(wi);
                wi + (&vend - &vh) * a
            })
            .collect();
        Ok((p, transported))
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let theta = self.angle(x, y);
        if theta == 0.0 {
            return Ok(Vector::zeros(x.len()));
        }
        let xh = x / self.radius;
        let dir = y - &xh * xh.dot(y);
        let n = dir.norm();
        if theta > std::f64::consts::PI - 1e-9 || n < 1e-300 {
            return Err(Error::domain("antipodal points: minimal geodesic not unique", y.as_slice()));
        }
        Ok(dir * (self.radius * theta / n))
    }
    fn constant_curvature(&self) -> Option<f64> {
        Some(self.curvature())
    }
    fn exact_stepping(&self) -> bool {
        true
    }
    fn project_tangent(&self, x: &Vector, v: &Vector) -> Vector {
        let xh = x / x.norm();
        v - &xh * xh.dot(v)
    }
    fn canonical_frame(&self, x: &Vector) -> Result<Matrix> {
        let n = self.dim + 1;
        let xh = x / x.norm();
        let drop = xh.iamax();
        let mut cols: Vec<Vector> = Vec::with_capacity(self.dim);
        for i in (0..n).filter(|&i| i != drop) {
            let mut c = Vector::zeros(n);
            c[i] = 1.0;
            for _ in 0..2 {
                c -= &xh * xh.dot(&c);
                for prev in &cols {
                    c -= prev * prev.dot(&c);
                }
            }
            let nc = c.norm();
            cols.push(c / nc);
        }
        Ok(Matrix::from_columns(&cols))
    }
    fn chart_norm(&self, x: &Vector) -> f64 {
        x.norm()
    }
}

/// Stereographic chart of the round sphere from the north pole: the south pole
/// maps to 0 and g = (2R²/(|y|²+R²))² Id.
#[derive(Debug, Clone, PartialEq)]
pub struct StereographicSphere {
    pub dim: usize,
    pub radius: f64,
}

impl StereographicSphere {
    pub fn embedded(&self) -> Sphere {
        Sphere { dim: self.dim, radius: self.radius }
    }

    fn conformal_factor(&self, y: &Vector) -> f64 {
        let r2 = self.radius * self.radius;
        2.0 * r2 / (y.norm_squared() + r2)
    }

    /// Chart point to embedded point.
    pub fn to_embedded(&self, y: &Vector) -> Vector {
        let r = self.radius;
        let r2 = r * r;
        let s = y.norm_squared();
        let mut p = Vector::zeros(self.dim + 1);
        for i in 0..self.dim {
            p[i] = 2.0 * r2 * y[i] / (s + r2);
        }
        p[self.dim] = r * (s - r2) / (s + r2);
        p
    }

    /// Embedded point (not the north pole) to chart point.
    pub fn from_embedded(&self, p: &Vector) -> Vector {
        let r = self.radius;
        let denom = r - p[self.dim];
        Vector::from_fn(self.dim, |i, _| r * p[i] / denom)
    }

    /// Differential of [`Self::to_embedded`] at y.
    fn push_forward(&self, y: &Vector) -> Matrix {
        let r2 = self.radius * self.radius;
        let s = y.norm_squared();
        let den = s + r2;
        let d = self.dim;
        let mut j = Matrix::zeros(d + 1, d);
        for i in 0..d {
            for k in 0..d {
                let delta = if i == k { 1.0 } else { 0.0 };
                j[(i, k)] = 2.0 * r2 * (delta / den - 2.0 * y[i] * y[k] / (den * den));
            }
        }
        for k in 0..d {
            j[(d, k)] = self.radius * 4.0 * r2 * y[k] / (den * den);
        }
        j
    }

    /// Differential of [`Self::from_embedded`] at p.
    fn pull_back_chart(&self, p: &Vector) -> Matrix {
        let r = self.radius;
        let d = self.dim;
        let denom = r - p[d];
        let mut j = Matrix::zeros(d, d + 1);
        for i in 0..d {
            j[(i, i)] = r / denom;
            j[(i, d)] = r * p[i] / (denom * denom);
        }
        j
    }
}

impl Geometry for StereographicSphere {
    fn id(&self) -> String {
        format!("sphere-chart(d={},R={})", self.dim, self.radius)
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
    fn metric(&self, y: &Vector) -> Result<Matrix> {
        let l = self.conformal_factor(y);
        Ok(Matrix::identity(self.dim, self.dim) * (l * l))
    }
    fn christoffel(&self, y: &Vector) -> Result<Christoffel> {
        // g = e^{2φ} Id with ∂_i φ = −2 y_i /(|y|² + R²)
        let den = y.norm_squared() + self.radius * self.radius;
        let dphi = y * (-2.0 / den);
        Ok(conformally_flat_christoffel(&dphi))
    }
    fn ricci(&self, y: &Vector) -> Result<Matrix> {
        Ok(self.metric(y)? * ((self.dim as f64 - 1.0) / (self.radius * self.radius)))
    }
    fn drift(&self, _y: &Vector) -> Result<Vector> {
        Ok(Vector::zeros(self.dim))
    }
    fn drift_covariant(&self, _y: &Vector) -> Result<Matrix> {
        Ok(Matrix::zeros(self.dim, self.dim))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        self.embedded().distance(&self.to_embedded(x), &self.to_embedded(y))
    }
    fn exp_transport(&self, y: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        let s = self.embedded();
        let jac = self.push_forward(y);
        let p = self.to_embedded(y);
        let we: Vec<Vector> = w.iter().map(|wi| &jac * wi).collect();
        let (q, wq) = s.exp_transport(&p, &(&jac * v), &we)?;
        if (q[self.dim] - self.radius).abs() < 1e-12 * self.radius {
            return Err(Error::domain("geodesic reached the chart pole", q.as_slice()));
        }
        let back = self.pull_back_chart(&q);
        Ok((self.from_embedded(&q), wq.iter().map(|wi| &back * wi).collect()))
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let s = self.embedded();
        let p = self.to_embedded(x);
        let v = s.log(&p, &self.to_embedded(y))?;
        Ok(self.pull_back_chart(&p) * v)
    }
    fn constant_curvature(&self) -> Option<f64> {
        Some(1.0 / (self.radius * self.radius))
    }
}

/// Γ^k_ij = δ_ik ∂_jφ + δ_jk ∂_iφ − δ_ij ∂_kφ for g = e^{2φ} Id.
pub(crate) fn conformally_flat_christoffel(dphi: &Vector) -> Christoffel {
    let d = dphi.len();
    let mut g = Christoffel::zeros(d);
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut v = 0.0;
                if i == k {
                    v += dphi[j];
                }
                if j == k {
                    v += dphi[i];
                }
                if i == j {
                    v -= dphi[k];
                }
                g.set(k, i, j, v);
            }
        }
    }
    g
}
