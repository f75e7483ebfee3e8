use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::stochastic::{partition_indices, HorizontalPath};

type ValueFn = dyn Fn(&[Vector]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[Vector]) -> Vec<Vector> + Send + Sync;

/// Default centered-difference step for gradient oracles.
pub const FD_GRADIENT_STEP: f64 = 1e-5;

/// F(γ) = f(γ_{s_1}, …, γ_{s_N}) with a per-slot gradient oracle returning the
/// coordinate differential ∂_j f (ambient gradient for embedded models).
#[derive(Clone)]
pub struct CylindricalFunction {
    pub id: String,
    pub times: Vec<f64>,
    f: Arc<ValueFn>,
    grad: Option<Arc<GradFn>>,
    pub fd_step: f64,
    /// Known sup |f|, if any.
    pub bound: Option<f64>,
}

impl std::fmt::Debug for CylindricalFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("CylindricalFunction")
            .field("id", &self.id)
            .field("times", &self.times)
            .field("closed_form_gradient", &self.grad.is_some())
            .finish()
    }
}

impl CylindricalFunction {
    pub fn new(
        id: impl Into<String>,
        times: Vec<f64>,
        f: impl Fn(&[Vector]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Contract("cylindrical function needs at least one time".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) || times[0] <= 0.0 {
            return Err(Error::Contract("times must be strictly increasing in (0, T]".into()));
        }
        Ok(CylindricalFunction {
            id: id.into(),
            times,
            f: Arc::new(f),
            grad: None,
            fd_step: FD_GRADIENT_STEP,
            bound: None,
        })
    }

    pub fn with_gradient(mut self, grad: impl Fn(&[Vector]) -> Vec<Vector> + Send + Sync + 'static) -> Self {
        self.grad = Some(Arc::new(grad));
        self
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn slots(&self) -> usize {
        self.times.len()
    }

    pub fn has_closed_form_gradient(&self) -> bool {
        self.grad.is_some()
    }

    pub fn value_at(&self, points: &[Vector]) -> f64 {
        (self.f)(points)
    }

    /// Closed-form gradient if present, centered differences otherwise.
    pub fn gradient_at(&self, points: &[Vector]) -> Result<Vec<Vector>> {
        let g = match &self.grad {
            Some(g) => g(points),
            None => self.fd_gradient(points),
        };
        for (slot, v) in g.iter().enumerate() {
            if !crate::linalg::all_finite(v.as_slice()) {
                return Err(Error::GradientOracle { slot, reason: "non-finite gradient".into() });
            }
        }
        Ok(g)
    }

    pub fn fd_gradient(&self, points: &[Vector]) -> Vec<Vector> {
        let h = self.fd_step;
        let mut pts = points.to_vec();
        let mut out = Vec::with_capacity(points.len());
        for j in 0..points.len() {
            let mut g = Vector::zeros(points[j].len());
            for i in 0..points[j].len() {
                let orig = pts[j][i];
                pts[j][i] = orig + h;
                let fp = (self.f)(&pts);
                pts[j][i] = orig - h;
                let fm = (self.f)(&pts);
                pts[j][i] = orig;
                g[i] = (fp - fm) / (2.0 * h);
            }
            out.push(g);
        }
        out
    }

    pub fn indices(&self, path: &HorizontalPath) -> Result<Vec<usize>> {
        partition_indices(&self.times, path.dt, path.steps())
    }

    pub fn points<'a>(&self, path: &'a HorizontalPath) -> Result<Vec<Vector>> {
        path.require_complete()?;
        Ok(self.indices(path)?.into_iter().map(|k| path.points[k].clone()).collect())
    }

    /// F(γ).
    pub fn eval(&self, path: &HorizontalPath) -> Result<f64> {
        Ok(self.value_at(&self.points(path)?))
    }

    /// a_j = u_{s_j}ᵀ ∂_j f: the slot gradients pulled back to ℝ^d.
    pub fn anchors(&self, path: &HorizontalPath) -> Result<(Vec<usize>, Vec<Vector>)> {
        let idx = self.indices(path)?;
        let pts: Vec<Vector> = idx.iter().map(|&k| path.points[k].clone()).collect();
        let grads = self.gradient_at(&pts)?;
        let a = idx.iter().zip(&grads).map(|(&k, g)| path.frames[k].transpose() * g).collect();
        Ok((idx, a))
    }

    // -- named functionals ------------------------------------------------

    pub fn constant(value: f64, t: f64) -> Self {
        CylindricalFunction::new(format!("const({value})"), vec![t], move |_| value)
            .expect("valid time")
            .with_gradient(|p| vec![Vector::zeros(p[0].len())])
            .with_bound(value.abs())
    }

    /// ⟨a, γ_t⟩ in the model's coordinates.
    pub fn linear(a: Vector, t: f64) -> Self {
        let a2 = a.clone();
        CylindricalFunction::new(format!("linear(t={t})"), vec![t], move |p| a.dot(&p[0]))
            .expect("valid time")
            .with_gradient(move |_| vec![a2.clone()])
    }

    /// exp(θ γ_t^{(i)} − θ² t / 2).
    pub fn gaussian_tilt(theta: f64, coord: usize, t: f64) -> Self {
        let f = move |p: &[Vector]| (theta * p[0][coord] - 0.5 * theta * theta * t).exp();
        CylindricalFunction::new(format!("tilt(theta={theta},i={coord})"), vec![t], f)
            .expect("valid time")
            .with_gradient(move |p| {
                let mut g = Vector::zeros(p[0].len());
                g[coord] = theta * f(p);
                vec![g]
            })
    }

    /// The square root of [`Self::gaussian_tilt`].
    pub fn sqrt_gaussian_tilt(theta: f64, coord: usize, t: f64) -> Self {
        let f = move |p: &[Vector]| (0.5 * theta * p[0][coord] - 0.25 * theta * theta * t).exp();
        CylindricalFunction::new(format!("sqrt-tilt(theta={theta},i={coord})"), vec![t], f)
            .expect("valid time")
            .with_gradient(move |p| {
                let mut g = Vector::zeros(p[0].len());
                g[coord] = 0.5 * theta * f(p);
                vec![g]
            })
    }

    /// Member `index` of a seeded family of smooth bounded functionals
    /// f = 1.5 + Σ_j b_j sin(⟨w_j, x_j⟩ + φ_j) + c cos(⟨w_1, x_1⟩ − ⟨w_N, x_N⟩)
    /// with Σ|b_j| + |c| ≤ 1, so 0.5 ≤ f ≤ 2.5.
    pub fn smooth_battery(index: u64, ambient_dim: usize, times: Vec<f64>) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(crate::parallel::mix64(0x5EED_BA77, index));
        let n = times.len();
        let freqs: Vec<Vector> = (0..n)
            .map(|_| Vector::from_fn(ambient_dim, |_, _| rng.random_range(-1.5..1.5)))
            .collect();
        let phases: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        let mut amps: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let total: f64 = amps.iter().map(|a| a.abs()).sum();
        for a in &mut amps {
            *a /= total;
        }
        let (fr, ph, am) = (freqs.clone(), phases.clone(), amps.clone());
        let value = move |p: &[Vector]| {
            let mut v = 1.5;
            for j in 0..n {
                v += am[j] * (fr[j].dot(&p[j]) + ph[j]).sin();
            }
            v + am[n] * (fr[0].dot(&p[0]) - fr[n - 1].dot(&p[n - 1])).cos()
        };
        let grad = move |p: &[Vector]| {
            let mut g: Vec<Vector> = (0..n)
                .map(|j| &freqs[j] * (amps[j] * (freqs[j].dot(&p[j]) + phases[j]).cos()))
                .collect();
            let s = -(amps[n]) * (freqs[0].dot(&p[0]) - freqs[n - 1].dot(&p[n - 1])).sin();
            g[0] += &freqs[0] * s;
            g[n - 1] -= &freqs[n - 1] * s;
            g
        };
        Ok(CylindricalFunction::new(format!("battery({index})"), times, value)?
            .with_gradient(grad)
            .with_bound(2.5))
    }
}
