use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::parallel::mix64;

/// Brownian increments Δw_k ~ N(0, dt·Id), reproducible from (seed, path_index).
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingNoise {
    pub horizon: f64,
    pub steps: usize,
    pub dim: usize,
    /// Row-major n×d.
    pub increments: Vec<f64>,
    pub seed: u64,
    pub path_index: u64,
}

impl DrivingNoise {
    pub fn generate(horizon: f64, steps: usize, dim: usize, seed: u64, path_index: u64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) || steps == 0 || dim == 0 {
            return Err(Error::Contract(format!(
                "invalid noise shape (T={horizon}, n={steps}, d={dim})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed, path_index));
        let sd = (horizon / steps as f64).sqrt();
        let increments = (0..steps * dim)
            .map(|_| sd * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng))
            .collect();
        Ok(DrivingNoise { horizon, steps, dim, increments, seed, path_index })
    }

    /// Noise with all increments zero.
    pub fn zero(horizon: f64, steps: usize, dim: usize) -> Self {
        DrivingNoise { horizon, steps, dim, increments: vec![0.0; steps * dim], seed: 0, path_index: 0 }
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn increment(&self, k: usize) -> Vector {
        Vector::from_column_slice(&self.increments[k * self.dim..(k + 1) * self.dim])
    }

    pub fn path_seed(&self) -> u64 {
        mix64(self.seed, self.path_index)
    }

    /// w + εh.
    pub fn shifted(&self, h: &CameronMartinPath, eps: f64) -> Result<Self> {
        if h.steps() != self.steps || h.dim() != self.dim {
            return Err(Error::Contract("Cameron–Martin path does not match the noise grid".into()));
        }
        let dt = self.dt();
        let mut out = self.clone();
        for k in 0..self.steps {
            for i in 0..self.dim {
                out.increments[k * self.dim + i] += eps * h.hdot[k][i] * dt;
            }
        }
        Ok(out)
    }

    /// Deterministic auxiliary stream for this path (initial points, bridges).
    pub fn auxiliary_rng(&self, tag: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix64(self.path_seed(), tag.wrapping_add(1 << 40)))
    }

    /// w_T.
    pub fn endpoint(&self) -> Vector {
        let mut w = Vector::zeros(self.dim);
        for k in 0..self.steps {
            w += self.increment(k);
        }
        w
    }
}

/// h with h₀ = 0 and piecewise constant derivative on the noise grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CameronMartinPath {
    pub dt: f64,
    pub hdot: Vec<Vector>,
}

impl CameronMartinPath {
    pub fn from_derivative(dt: f64, hdot: Vec<Vector>) -> Result<Self> {
        if !(dt > 0.0) || hdot.is_empty() {
            return Err(Error::Contract("empty Cameron–Martin path".into()));
        }
        let d = hdot[0].len();
        if hdot.iter().any(|v| v.len() != d || !crate::linalg::all_finite(v.as_slice())) {
            return Err(Error::Contract("Cameron–Martin derivative must be finite with fixed dimension".into()));
        }
        Ok(CameronMartinPath { dt, hdot })
    }

    /// ḣ ≡ direction on [0, T].
    pub fn constant(horizon: f64, steps: usize, direction: Vector) -> Self {
        CameronMartinPath { dt: horizon / steps as f64, hdot: vec![direction; steps] }
    }

    pub fn zero(horizon: f64, steps: usize, dim: usize) -> Self {
        Self::constant(horizon, steps, Vector::zeros(dim))
    }

    pub fn steps(&self) -> usize {
        self.hdot.len()
    }

    pub fn dim(&self) -> usize {
        self.hdot[0].len()
    }

    /// Grid values h_0 = 0, …, h_n.
    pub fn values(&self) -> Vec<Vector> {
        let mut out = Vec::with_capacity(self.steps() + 1);
        let mut h = Vector::zeros(self.dim());
        out.push(h.clone());
        for v in &self.hdot {
            h += v * self.dt;
            out.push(h.clone());
        }
        out
    }

    /// ‖h‖²_H = Σ|ḣ_k|² dt.
    pub fn energy(&self) -> f64 {
        self.hdot.iter().map(|v| v.norm_squared() * self.dt).sum()
    }

    /// Rebuilds a path from grid values with h_0 = 0.
    pub fn from_values(dt: f64, values: &[Vector]) -> Result<Self> {
        if values.len() < 2 || values[0].norm() != 0.0 {
            return Err(Error::Contract("grid values must start at 0".into()));
        }
        let hdot = values.windows(2).map(|w| (&w[1] - &w[0]) / dt).collect();
        Self::from_derivative(dt, hdot)
    }
}
