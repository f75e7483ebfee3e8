use crate::linalg::{Matrix, Vector};

/// Drift fields on ℝ^d.
#[derive(Debug, Clone, PartialEq)]
pub enum Drift {
    Zero,
    /// Z = −λx (Ornstein–Uhlenbeck).
    Linear { lambda: f64 },
    /// Z = ∇V with V = (1+|x|²)^δ.
    GradientPower { delta: f64 },
    /// Z = −λx + ω J x with J the rotation generator of the first two axes.
    Spiral { lambda: f64, omega: f64 },
}

impl Drift {
    pub fn id(&self) -> String {
        match self {
            Drift::Zero => "zero".into(),
            Drift::Linear { lambda } => format!("ou(lambda={lambda})"),
            Drift::GradientPower { delta } => format!("grad-power(delta={delta})"),
            Drift::Spiral { lambda, omega } => format!("spiral(lambda={lambda},omega={omega})"),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Drift::Zero)
    }

    pub fn value(&self, x: &Vector) -> Vector {
        match *self {
            Drift::Zero => Vector::zeros(x.len()),
            Drift::Linear { lambda } => x * (-lambda),
            Drift::GradientPower { delta } => {
                let s = 1.0 + x.norm_squared();
                x * (2.0 * delta * s.powf(delta - 1.0))
            }
            Drift::Spiral { lambda, omega } => {
                let mut z = x * (-lambda);
                if x.len() >= 2 {
                    z[0] -= omega * x[1];
                    z[1] += omega * x[0];
                }
                z
            }
        }
    }

    /// J[k][l] = ∂_l Z^k.
    pub fn jacobian(&self, x: &Vector) -> Matrix {
        let d = x.len();
        match *self {
            Drift::Zero => Matrix::zeros(d, d),
            Drift::Linear { lambda } => Matrix::identity(d, d) * (-lambda),
            Drift::GradientPower { delta } => {
                let s = 1.0 + x.norm_squared();
                Matrix::identity(d, d) * (2.0 * delta * s.powf(delta - 1.0))
                    + (x * x.transpose()) * (4.0 * delta * (delta - 1.0) * s.powf(delta - 2.0))
            }
            Drift::Spiral { lambda, omega } => {
                let mut j = Matrix::identity(d, d) * (-lambda);
                if d >= 2 {
                    j[(0, 1)] -= omega;
                    j[(1, 0)] += omega;
                }
                j
            }
        }
    }
}
