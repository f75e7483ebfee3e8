use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{fd_christoffel, Christoffel, Geometry};
use crate::linalg::{Matrix, Vector};

use super::ConformalFactor;

/// f at which conformal formulas refuse to evaluate.
pub const NEAR_BOUNDARY: f64 = 1e-8;

fn checked_value(factor: &dyn ConformalFactor, x: &Vector) -> Result<f64> {
    let f = factor.value(x);
    if !(f >= NEAR_BOUNDARY) {
        return Err(Error::NearBoundary { value: f, point: x.as_slice().to_vec() });
    }
    Ok(f)
}

fn inverse(g: &Matrix) -> Result<Matrix> {
    g.clone()
        .try_inverse()
        .ok_or_else(|| Error::Contract("singular metric".into()))
}

/// Christoffel symbols of g′ = f⁻²g:
/// Γ′^k_ij = Γ^k_ij − δ^k_j ∂_i ℓ − δ^k_i ∂_j ℓ + g_ij g^{kl} ∂_l ℓ with ℓ = log f.
pub fn conformal_christoffel<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    x: &Vector,
) -> Result<Christoffel> {
    let f = checked_value(factor, x)?;
    let dl = factor.gradient(x) / f;
    let g = base.metric(x)?;
    let up = inverse(&g)? * &dl;
    let mut gam = base.christoffel(x)?;
    let d = x.len();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut v = g[(i, j)] * up[k];
                if k == j {
                    v -= dl[i];
                }
                if k == i {
                    v -= dl[j];
                }
                gam.add(k, i, j, v);
            }
        }
    }
    Ok(gam)
}

/// Covariant Hessian ∂²f − Γ^k ∂_k f of the factor on the base.
pub fn covariant_hessian<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    x: &Vector,
) -> Result<Matrix> {
    let gam = base.christoffel(x)?;
    let df = factor.gradient(x);
    let d = x.len();
    let mut h = factor.hessian(x);
    for i in 0..d {
        for j in 0..d {
            h[(i, j)] -= (0..d).map(|k| gam.get(k, i, j) * df[k]).sum::<f64>();
        }
    }
    Ok(h)
}

/// Ric′ = Ric + (d−2) f⁻¹ Hess f + (f⁻¹ Δf − (d−1)|∇ log f|²) g.
pub fn conformal_ricci<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    x: &Vector,
) -> Result<Matrix> {
    let f = checked_value(factor, x)?;
    let d = x.len() as f64;
    let g = base.metric(x)?;
    let ginv = inverse(&g)?;
    let hess = covariant_hessian(base, factor, x)?;
    let lap = (&ginv * &hess).trace();
    let dl = factor.gradient(x) / f;
    let grad_l2 = (dl.transpose() * &ginv * &dl)[(0, 0)];
    let ric = base.ricci(x)? + &hess * ((d - 2.0) / f) + &g * (lap / f - (d - 1.0) * grad_l2);
    Ok(crate::linalg::sym(&ric))
}

/// Z′ = f²Z + (d−2) f ∇f.
pub fn transformed_drift<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    x: &Vector,
) -> Result<Vector> {
    let f = factor.value(x);
    let d = x.len() as f64;
    let grad = inverse(&base.metric(x)?)? * factor.gradient(x);
    Ok(base.drift(x)? * (f * f) + grad * ((d - 2.0) * f))
}

/// The equivalent form Z′ = f²Z + ((d−2)/2) ∇(f²).
pub fn transformed_drift_squared_form<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    x: &Vector,
) -> Result<Vector> {
    let f = factor.value(x);
    let d = x.len() as f64;
    let grad_f2 = factor.gradient(x) * (2.0 * f);
    let grad = inverse(&base.metric(x)?)? * grad_f2;
    Ok(base.drift(x)? * (f * f) + grad * ((d - 2.0) / 2.0))
}

/// Smooth test vector field X(x) = Σ_m A_m sin(ω_m·x + φ_m).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigField {
    pub amplitudes: Vec<Vector>,
    pub frequencies: Vec<Vector>,
    pub phases: Vec<f64>,
}

impl TrigField {
    pub fn random(dim: usize, modes: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amplitudes = Vec::new();
        let mut frequencies = Vec::new();
        let mut phases = Vec::new();
        for _ in 0..modes {
            amplitudes.push(Vector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)));
            frequencies.push(Vector::from_fn(dim, |_, _| rng.random_range(-1.5..1.5)));
            phases.push(rng.random_range(0.0..std::f64::consts::TAU));
        }
        TrigField { amplitudes, frequencies, phases }
    }

    pub fn value(&self, x: &Vector) -> Vector {
        let mut out = Vector::zeros(x.len());
        for ((a, w), p) in self.amplitudes.iter().zip(&self.frequencies).zip(&self.phases) {
            out += a * (w.dot(x) + p).sin();
        }
        out
    }

    /// J[k][i] = ∂_i X^k.
    pub fn jacobian(&self, x: &Vector) -> Matrix {
        let d = x.len();
        let mut j = Matrix::zeros(d, d);
        for ((a, w), p) in self.amplitudes.iter().zip(&self.frequencies).zip(&self.phases) {
            j += (a * w.transpose()) * (w.dot(x) + p).cos();
        }
        j
    }
}

/// ∇X as the (1,1) matrix (∇X)^k_i = ∂_i X^k + Γ^k_ij X^j.
pub fn covariant_derivative(gam: &Christoffel, x_val: &Vector, jac: &Matrix) -> Matrix {
    jac + gam.contract_last(x_val)
}

/// Hilbert–Schmidt norm of a (1,1) tensor with respect to g:
/// √(g_kl g^ij T^k_i T^l_j). Invariant under g ↦ f⁻²g.
pub fn tensor_norm(g: &Matrix, ginv: &Matrix, t: &Matrix) -> f64 {
    (g * t * ginv * t.transpose()).trace().max(0.0).sqrt()
}

/// Outcome of [`conformal_connection_diff`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionReport {
    /// max |Γ′_closed − Γ′_FD| over points.
    pub max_fd_deviation: f64,
    /// max over points and fields of ||∇X|_g − |∇′X|_g′| / (3|∇f|_g|X|_g′).
    pub max_bound_ratio: f64,
    /// max |∇′X − ∇X| with the difference field in the f ≡ const case.
    pub max_difference: f64,
    pub points: usize,
    pub pass: bool,
}

/// Finite-difference step for Christoffel oracles.
pub const FD_CHRISTOFFEL_STEP: f64 = 1e-4;

/// Validates the conformal connection against FD Christoffels of g′ and checks
/// | |∇X|_g − |∇′X|_{g′} | ≤ 3|∇f|_g |X|_{g′} at every point for every field.
pub fn conformal_connection_diff<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    fields: &[TrigField],
    points: &[Vector],
) -> Result<ConnectionReport> {
    let mut max_fd = 0.0_f64;
    let mut max_ratio = 0.0_f64;
    let mut max_diff = 0.0_f64;
    for x in points {
        let f = factor.value(x);
        if !(f > 0.0) {
            return Err(Error::domain("point outside the support of f", x.as_slice()));
        }
        let closed = conformal_christoffel(base, factor, x)?;
        let metric_p = |y: &Vector| -> Result<Matrix> {
            let fy = factor.value(y);
            Ok(base.metric(y)? / (fy * fy))
        };
        let fd = fd_christoffel(metric_p, x, FD_CHRISTOFFEL_STEP)?;
        max_fd = max_fd.max(closed.max_abs_diff(&fd));

        let base_gam = base.christoffel(x)?;
        let g = base.metric(x)?;
        let ginv = inverse(&g)?;
        let gp = &g / (f * f);
        let gpinv = &ginv * (f * f);
        let grad_f = crate::linalg::norm_g(&ginv, &factor.gradient(x));
        for field in fields {
            let xv = field.value(x);
            let jac = field.jacobian(x);
            let nabla = covariant_derivative(&base_gam, &xv, &jac);
            let nabla_p = covariant_derivative(&closed, &xv, &jac);
            max_diff = max_diff.max(crate::linalg::max_abs(&(&nabla_p - &nabla)));
            let lhs = (tensor_norm(&g, &ginv, &nabla) - tensor_norm(&gp, &gpinv, &nabla_p)).abs();
            let rhs = 3.0 * grad_f * crate::linalg::norm_g(&gp, &xv);
            let ratio = if rhs > 0.0 {
                lhs / rhs
            } else if lhs <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            max_ratio = max_ratio.max(ratio);
        }
    }
    Ok(ConnectionReport {
        max_fd_deviation: max_fd,
        max_bound_ratio: max_ratio,
        max_difference: max_diff,
        points: points.len(),
        pass: max_fd <= 1e-5 && max_ratio <= 1.0,
    })
}

/// Containment probe for fX: worst ratio of |∇′(fX)|_{g′} to
/// 4|∇f|_g|X|_g + f|∇X|_g over the sample points.
pub fn containment_ratio<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    field: &TrigField,
    points: &[Vector],
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for x in points {
        let f = checked_value(factor, x)?;
        let df = factor.gradient(x);
        let g = base.metric(x)?;
        let ginv = inverse(&g)?;
        let xv = field.value(x);
        let jac = field.jacobian(x);
        // ∂_i (f X^k) = f ∂_i X^k + X^k ∂_i f
        let jac_fx = &jac * f + &xv * df.transpose();
        let gp = &g / (f * f);
        let gpinv = &ginv * (f * f);
        let nabla_fx = covariant_derivative(&conformal_christoffel(base, factor, x)?, &(&xv * f), &jac_fx);
        let lhs = tensor_norm(&gp, &gpinv, &nabla_fx);
        let nabla_x = covariant_derivative(&base.christoffel(x)?, &xv, &jac);
        let rhs = 4.0 * crate::linalg::norm_g(&ginv, &df) * crate::linalg::norm_g(&g, &xv)
            + f * tensor_norm(&g, &ginv, &nabla_x);
        if rhs > 0.0 {
            worst = worst.max(lhs / rhs);
        }
    }
    Ok(worst)
}

/// Worst max-abs deviation of [`conformal_ricci`] from the Ricci form of
/// g′ = f⁻²g computed purely by finite differences of g′.
pub fn conformal_ricci_fd_deviation<G: Geometry + ?Sized>(
    base: &G,
    factor: &dyn ConformalFactor,
    points: &[Vector],
) -> Result<f64> {
    let metric_p = |y: &Vector| -> Result<Matrix> {
        let fy = factor.value(y);
        Ok(base.metric(y)? / (fy * fy))
    };
    let mut worst = 0.0_f64;
    for x in points {
        let closed = conformal_ricci(base, factor, x)?;
        let fd = crate::geometry::fd_ricci(|y| fd_christoffel(metric_p, y, FD_CHRISTOFFEL_STEP), x, 1e-3)?;
        worst = worst.max(crate::linalg::max_abs(&(closed - crate::linalg::sym(&fd))));
    }
    Ok(worst)
}
