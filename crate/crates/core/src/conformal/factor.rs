use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::cutoff::{CutoffChain, Envelope};

/// A smooth scalar field 0 ≤ f ≤ 1 with coordinate gradient and Hessian.
pub trait ConformalFactor: Send + Sync + std::fmt::Debug {
    fn id(&self) -> String;
    fn value(&self, x: &Vector) -> f64;
    /// ∂_i f.
    fn gradient(&self, x: &Vector) -> Vector;
    /// ∂_i∂_j f.
    fn hessian(&self, x: &Vector) -> Matrix;
    /// Radius beyond which f ≡ 0, if compactly supported.
    fn support_radius(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantFactor {
    pub value: f64,
}

impl ConformalFactor for ConstantFactor {
    fn id(&self) -> String {
        format!("const({})", self.value)
    }
    fn value(&self, _x: &Vector) -> f64 {
        self.value
    }
    fn gradient(&self, x: &Vector) -> Vector {
        Vector::zeros(x.len())
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        Matrix::zeros(x.len(), x.len())
    }
}

/// f = a·exp(−|x − c|²/(2w²)) with 0 < a ≤ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBump {
    pub center: Vector,
    pub width: f64,
    pub amplitude: f64,
}

impl GaussianBump {
    pub fn new(center: Vector, width: f64, amplitude: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Contract("bump width must be positive".into()));
        }
        if !(amplitude > 0.0 && amplitude <= 1.0) {
            return Err(Error::Contract("bump amplitude must lie in (0, 1]".into()));
        }
        Ok(GaussianBump { center, width, amplitude })
    }
}

impl ConformalFactor for GaussianBump {
    fn id(&self) -> String {
        format!("bump(w={},a={})", self.width, self.amplitude)
    }
    fn value(&self, x: &Vector) -> f64 {
        let y = x - &self.center;
        self.amplitude * (-y.norm_squared() / (2.0 * self.width * self.width)).exp()
    }
    fn gradient(&self, x: &Vector) -> Vector {
        let y = x - &self.center;
        y * (-self.value(x) / (self.width * self.width))
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        let y = x - &self.center;
        let w2 = self.width * self.width;
        let d = x.len();
        ((&y * y.transpose()) / (w2 * w2) - Matrix::identity(d, d) / w2) * self.value(x)
    }
}

/// Factor section of a config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FactorSpec {
    Constant {
        value: f64,
    },
    GaussianBump {
        width: f64,
        #[serde(default = "unit")]
        amplitude: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    Cutoff {
        envelope: Envelope,
        n: f64,
    },
}

fn unit() -> f64 {
    1.0
}

impl FactorSpec {
    pub fn build(&self, dim: usize) -> Result<std::sync::Arc<dyn ConformalFactor>> {
        Ok(match self {
            FactorSpec::Constant { value } => {
                if !(*value > 0.0 && *value <= 1.0) {
                    return Err(Error::config("model.factor.value", "constant factor must lie in (0, 1]"));
                }
                std::sync::Arc::new(ConstantFactor { value: *value })
            }
            FactorSpec::GaussianBump { width, amplitude, center } => {
                let c = match center {
                    Some(c) if c.len() != dim => {
                        return Err(Error::config("model.factor.center", "length must equal dim"))
                    }
                    Some(c) => Vector::from_column_slice(c),
                    None => Vector::zeros(dim),
                };
                std::sync::Arc::new(GaussianBump::new(c, *width, *amplitude)?)
            }
            FactorSpec::Cutoff { envelope, n } => {
                std::sync::Arc::new(CutoffChain::new(envelope.clone(), dim)?.member(*n)?)
            }
        })
    }
}
