use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalModel, FactorSpec};
use crate::error::Result;
use crate::linalg::{Matrix, Vector};

use super::{Christoffel, Drift, Euclidean, Geometry, Hyperbolic, Sphere};

/// The bundled model spaces.
#[derive(Debug, Clone)]
pub enum ManifoldModel {
    Euclidean(Euclidean),
    Sphere(Sphere),
    Hyperbolic(Hyperbolic),
    Conformal(ConformalModel),
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            ManifoldModel::Euclidean($m) => $e,
            ManifoldModel::Sphere($m) => $e,
            ManifoldModel::Hyperbolic($m) => $e,
            ManifoldModel::Conformal($m) => $e,
        }
    };
}

impl Geometry for ManifoldModel {
    fn id(&self) -> String {
        dispatch!(self, m => m.id())
    }
    fn dim(&self) -> usize {
        dispatch!(self, m => m.dim())
    }
    fn ambient_dim(&self) -> usize {
        dispatch!(self, m => m.ambient_dim())
    }
    fn origin(&self) -> Vector {
        dispatch!(self, m => m.origin())
    }
    fn in_domain(&self, x: &Vector) -> bool {
        dispatch!(self, m => m.in_domain(x))
    }
    fn metric(&self, x: &Vector) -> Result<Matrix> {
        dispatch!(self, m => m.metric(x))
    }
    fn christoffel(&self, x: &Vector) -> Result<Christoffel> {
        dispatch!(self, m => m.christoffel(x))
    }
    fn ricci(&self, x: &Vector) -> Result<Matrix> {
        dispatch!(self, m => m.ricci(x))
    }
    fn drift(&self, x: &Vector) -> Result<Vector> {
        dispatch!(self, m => m.drift(x))
    }
    fn drift_covariant(&self, x: &Vector) -> Result<Matrix> {
        dispatch!(self, m => m.drift_covariant(x))
    }
    fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        dispatch!(self, m => m.distance(x, y))
    }
    fn exp_transport(&self, x: &Vector, v: &Vector, w: &[Vector]) -> Result<(Vector, Vec<Vector>)> {
        dispatch!(self, m => m.exp_transport(x, v, w))
    }
    fn log(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        dispatch!(self, m => m.log(x, y))
    }
    fn constant_curvature(&self) -> Option<f64> {
        dispatch!(self, m => m.constant_curvature())
    }
    fn exact_stepping(&self) -> bool {
        dispatch!(self, m => m.exact_stepping())
    }
    fn radial_laplacian(&self, r: f64) -> Option<f64> {
        dispatch!(self, m => m.radial_laplacian(r))
    }
    fn project_tangent(&self, x: &Vector, v: &Vector) -> Vector {
        dispatch!(self, m => m.project_tangent(x, v))
    }
    fn canonical_frame(&self, x: &Vector) -> Result<Matrix> {
        dispatch!(self, m => m.canonical_frame(x))
    }
    fn chart_norm(&self, x: &Vector) -> f64 {
        dispatch!(self, m => m.chart_norm(x))
    }
}

impl ManifoldModel {
    /// Drift of the flat or conformal base, or zero for the curved models.
    pub fn base_drift(&self) -> Drift {
        match self {
            ManifoldModel::Euclidean(e) => e.drift.clone(),
            ManifoldModel::Conformal(c) => c.base.drift.clone(),
            _ => Drift::Zero,
        }
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        spec.build()
    }
}

impl From<Euclidean> for ManifoldModel {
    fn from(m: Euclidean) -> Self {
        ManifoldModel::Euclidean(m)
    }
}
impl From<Sphere> for ManifoldModel {
    fn from(m: Sphere) -> Self {
        ManifoldModel::Sphere(m)
    }
}
impl From<Hyperbolic> for ManifoldModel {
    fn from(m: Hyperbolic) -> Self {
        ManifoldModel::Hyperbolic(m)
    }
}
impl From<ConformalModel> for ManifoldModel {
    fn from(m: ConformalModel) -> Self {
        ManifoldModel::Conformal(m)
    }
}

fn one() -> f64 {
    1.0
}

/// Model section of an experiment config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    Euclidean {
        dim: usize,
        #[serde(default)]
        drift: DriftSpec,
    },
    Sphere {
        dim: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    Hyperbolic {
        dim: usize,
        /// Sectional curvature is −c.
        #[serde(default = "one")]
        c: f64,
    },
    Conformal {
        dim: usize,
        #[serde(default)]
        drift: DriftSpec,
        factor: FactorSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DriftSpec {
    #[default]
    Zero,
    Ou {
        lambda: f64,
    },
    GradientPower {
        delta: f64,
    },
    Spiral {
        lambda: f64,
        omega: f64,
    },
}

impl DriftSpec {
    pub fn build(&self) -> Drift {
        match *self {
            DriftSpec::Zero => Drift::Zero,
            DriftSpec::Ou { lambda } => Drift::Linear { lambda },
            DriftSpec::GradientPower { delta } => Drift::GradientPower { delta },
            DriftSpec::Spiral { lambda, omega } => Drift::Spiral { lambda, omega },
        }
    }
}

impl ModelSpec {
    pub fn build(&self) -> Result<ManifoldModel> {
        Ok(match self {
            ModelSpec::Euclidean { dim, drift } => Euclidean::new(*dim, drift.build())?.into(),
            ModelSpec::Sphere { dim, radius } => Sphere::new(*dim, *radius)?.into(),
            ModelSpec::Hyperbolic { dim, c } => Hyperbolic::new(*dim, *c)?.into(),
            ModelSpec::Conformal { dim, drift, factor } => {
                let base = Euclidean::new(*dim, drift.build())?;
                ConformalModel::new(base, factor.build(*dim)?)?.into()
            }
        })
    }
}
