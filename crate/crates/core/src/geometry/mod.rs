//! Evaluatable model spaces: metric, Christoffel symbols, Ricci form, drift,
//! distance, exponential map and parallel transport.
//!
//! Chart models (Euclidean, Poincaré ball, conformal changes of ℝ^d) work in a
//! single global chart. The round sphere is carried in embedded coordinates of
//! ℝ^{d+1} with exact great-circle stepping; its stereographic chart is
//! available separately as [`StereographicSphere`] for chart-level checks.

mod chart;
mod drift;
mod euclidean;
mod hyperbolic;
mod model;
mod sphere;

pub use chart::{
    christoffel_from_metric, fd_christoffel, fd_ricci, geodesic_exp_transport, geodesic_log,
    Christoffel,
};
pub use drift::Drift;
pub use euclidean::Euclidean;
pub use hyperbolic::Hyperbolic;
pub use model::{DriftSpec, ManifoldModel, ModelSpec};
pub use sphere::{Sphere, StereographicSphere};

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, min_sym_eigenvalue, orthonormality_error, Matrix, Vector};

/// Tolerance on eᵀ g e = Id.
pub const FRAME_TOL: f64 = 1e-8;

/// Geometry interface consumed by the simulation and certificate code.
///
/// Points and tangent vectors are coordinate vectors of length
/// [`Geometry::ambient_dim`]; for chart models this equals [`Geometry::dim`].
pub trait Geometry: Send + Sync {
    fn id(&self) -> String;
    fn dim(&self) -> usize;
    fn ambient_dim(&self) -> usize {
        self.dim()
    }
    /// The reference point o.
    fn origin(&self) -> Vector;
    fn in_domain(&self, x: &Vector) -> bool;

    /// Gram matrix of tangent vectors at `x`.
    fn metric(&self, x: &Vector) -> Result<Matrix>;
    /// Γ^k_ij in the model's coordinates. Embedded models return `Unsupported`.
    fn christoffel(&self, x: &Vector) -> Result<Christoffel>;
    /// Ricci form as a bilinear matrix on coordinate tangent vectors.
    fn ricci(&self, x: &Vector) -> Result<Matrix>;
    fn drift(&self, x: &Vector) -> Result<Vector>;
    /// Matrix C with ∇_v Z = C v (covariant derivative of the drift).
    fn drift_covariant(&self, x: &Vector) -> Result<Matrix>;

    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64>;
    /// exp_x(v) and the parallel transports of `w` along t ↦ exp_x(tv).
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)>;
    /// Initial velocity of the minimal geodesic from x to y.
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector>;

    /// Sectional curvature if it is constant (0 for flat models).
    fn constant_curvature(&self) -> Option<f64>;
    /// Whether development should use exact geodesic steps instead of Heun.
    fn exact_stepping(&self) -> bool {
        false
    }
    /// Closed-form Laplacian of ρ_o at radius `r`, for radially symmetric models.
    fn radial_laplacian(&self, _r: f64) -> Option<f64> {
        None
    }
    fn project_tangent(&self, _x: &Vector, v: &Vector) -> Vector {
        v.clone()
    }
    /// An orthonormal frame at `x` (Gram–Schmidt of the coordinate basis).
    fn canonical_frame(&self, x: &Vector) -> Result<Matrix> {
        let g = self.metric(x)?;
        Ok(gram_schmidt(&g, &Matrix::identity(self.dim(), self.dim())))
    }
    /// Chart norm used by the explosion test.
    fn chart_norm(&self, x: &Vector) -> f64 {
        x.norm()
    }
}

/// A point together with a g-orthonormal family of tangent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub base: Vector,
    pub e: Matrix,
}

impl Frame {
    /// Validates orthonormality within [`FRAME_TOL`].
    pub fn new<G: Geometry + ?Sized>(model: &G, base: Vector, e: Matrix) -> Result<Self> {
        if e.nrows() != model.ambient_dim() || e.ncols() != model.dim() {
            return Err(Error::Contract(format!(
                "frame shape {}x{} does not match model ({}x{})",
                e.nrows(),
                e.ncols(),
                model.ambient_dim(),
                model.dim()
            )));
        }
        let err = orthonormality_error(&model.metric(&base)?, &e);
        if !(err <= FRAME_TOL) {
            return Err(Error::Contract(format!("frame not orthonormal (error {err:e})")));
        }
        Ok(Frame { base, e })
    }

    pub fn canonical<G: Geometry + ?Sized>(model: &G, base: Vector) -> Result<Self> {
        let e = model.canonical_frame(&base)?;
        Ok(Frame { base, e })
    }

    pub fn at_origin<G: Geometry + ?Sized>(model: &G) -> Result<Self> {
        Self::canonical(model, model.origin())
    }

    pub fn orthonormality_error<G: Geometry + ?Sized>(&self, model: &G) -> Result<f64> {
        Ok(orthonormality_error(&model.metric(&self.base)?, &self.e))
    }

    /// u⁻¹ v = eᵀ g v.
    pub fn pull_back<G: Geometry + ?Sized>(&self, model: &G, v: &Vector) -> Result<Vector> {
        Ok(self.e.transpose() * model.metric(&self.base)? * v)
    }
}

/// M[i][j] = (Ric − ∇Z)(u e_i, u e_j); not symmetrized.
pub fn ricci_z_matrix<G: Geometry + ?Sized>(model: &G, frame: &Frame) -> Result<Matrix> {
    let x = &frame.base;
    let e = &frame.e;
    let ric = model.ricci(x)?;
    let g = model.metric(x)?;
    let c = model.drift_covariant(x)?;
    let m = e.transpose() * ric * e - e.transpose() * c.transpose() * g * e;
    if !crate::linalg::all_finite(m.as_slice()) {
        return Err(Error::eval("Ric_Z", x.as_slice()));
    }
    Ok(m)
}

/// The operator Ric_Z^# = u⁻¹(Ric^♯ − ∇Z)u, i.e. the transpose of [`ricci_z_matrix`].
pub fn ricci_z_operator<G: Geometry + ?Sized>(model: &G, frame: &Frame) -> Result<Matrix> {
    Ok(ricci_z_matrix(model, frame)?.transpose())
}

pub fn distance<G: Geometry + ?Sized>(model: &G, x: &Vector, y: &Vector) -> Result<f64> {
    model.distance(x, y)
}

pub fn exp_and_transport<G: Geometry + ?Sized>(
    model: &G,
    x: &Vector,
    v: &Vector,
    w: &Vector,
) -> Result<(Vector, Vector)> {
    let (p, mut ws) = model.exp_transport(x, v, std::slice::from_ref(w))?;
    Ok((p, ws.pop().expect("one transported vector")))
}

/// Result of [`verify_curvature_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub min_eigenvalue: f64,
    pub worst_point: Option<Vector>,
    pub k: f64,
    pub pass: bool,
}

/// Evaluates the symmetric part of Ric − ∇Z in orthonormal frames at every
/// sample point; passes iff its smallest eigenvalue is ≥ −K − 1e−9.
pub fn verify_curvature_bound<G: Geometry + ?Sized>(
    model: &G,
    points: &[Vector],
    k: f64,
) -> Result<CurvatureReport> {
    let mut min = f64::INFINITY;
    let mut worst = None;
    for x in points {
        let frame = Frame::canonical(model, x.clone())?;
        let lam = min_sym_eigenvalue(&ricci_z_matrix(model, &frame)?);
        if lam < min {
            min = lam;
            worst = Some(x.clone());
        }
    }
    Ok(CurvatureReport {
        min_eigenvalue: min,
        worst_point: worst,
        k,
        pass: min >= -k - 1e-9,
    })
}

/// Smallest K ≥ 0 compatible with the sampled points.
pub fn estimate_curvature_floor<G: Geometry + ?Sized>(model: &G, points: &[Vector]) -> Result<f64> {
    let r = verify_curvature_bound(model, points, 0.0)?;
    Ok((-r.min_eigenvalue).max(0.0))
}

/// Checks |Z(x)|_g ≤ ψ(ρ_o(x)) on samples; returns the worst ratio |Z|/ψ.
pub fn verify_growth<G: Geometry + ?Sized>(
    model: &G,
    psi: impl Fn(f64) -> f64,
    points: &[Vector],
) -> Result<f64> {
    let o = model.origin();
    let mut worst = 0.0_f64;
    for x in points {
        let z = model.drift(x)?;
        let zn = crate::linalg::norm_g(&model.metric(x)?, &z);
        let r = model.distance(&o, x)?;
        worst = worst.max(zn / psi(r));
    }
    Ok(worst)
}
