use crate::error::{Error, Result};
use crate::geometry::{ricci_z_operator, Geometry};
use crate::linalg::{all_finite, min_sym_eigenvalue, op_norm, Matrix, Vector};
use crate::stochastic::{CameronMartinPath, HorizontalPath};

/// Condition-number ceiling for Q_k before inverses are refused.
pub const CONDITION_GUARD: f64 = 1e12;

/// Q_k = Q_{t_k,0} for dQ/dt = −½ Ric_Z^#(u_t) Q along one path.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedFlow {
    pub dt: f64,
    /// A_k = Ric_Z^#(u_{t_k}).
    pub generators: Vec<Matrix>,
    pub q: Vec<Matrix>,
    pub q_inv: Vec<Matrix>,
    /// One-step RK4 propagators Φ_k with Q_{k+1} = Φ_k Q_k.
    pub phi: Vec<Matrix>,
    /// Inhomogeneous RK4 weights: y' = −½Ay + c gives y_{k+1} = Φ_k y_k + W_k c.
    pub weights: Vec<Matrix>,
    /// RK4 propagators from t_k + dt/2 to t_{k+1}.
    pub half: Vec<Matrix>,
    /// max(0, −min eigenvalue of sym(A_k)) along the path.
    pub lambda_minus: f64,
}

/// RK4 stage matrices for B(t) = −½A(t) on one step of length h, with B given
/// at the start, midpoint and end.
fn rk4_propagators(b0: &Matrix, bm: &Matrix, b1: &Matrix, h: f64) -> (Matrix, Matrix) {
    let d = b0.nrows();
    let id = Matrix::identity(d, d);
    let k1 = b0.clone();
    let k2 = bm * (&id + &k1 * (0.5 * h));
    let k3 = bm * (&id + &k2 * (0.5 * h));
    let k4 = b1 * (&id + &k3 * h);
    let phi = &id + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    let l1 = id.clone();
    let l2 = &id + bm * &l1 * (0.5 * h);
    let l3 = &id + bm * &l2 * (0.5 * h);
    let l4 = &id + b1 * &l3 * h;
    let w = (l1 + l2 * 2.0 + l3 * 2.0 + l4) * (h / 6.0);
    (phi, w)
}

impl DampedFlow {
    /// Builds the flow from grid generators A_0..A_n.
    pub fn from_generators(dt: f64, generators: Vec<Matrix>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(Error::Contract("flow needs at least one step".into()));
        }
        let d = generators[0].nrows();
        let n = generators.len() - 1;
        let mut lambda_min = f64::INFINITY;
        for (k, a) in generators.iter().enumerate() {
            if !all_finite(a.as_slice()) {
                return Err(Error::NonFinite { step: k });
            }
            lambda_min = lambda_min.min(min_sym_eigenvalue(a));
        }
        let mut q = Vec::with_capacity(n + 1);
        let mut q_inv = Vec::with_capacity(n + 1);
        let mut phi = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut half = Vec::with_capacity(n);
        q.push(Matrix::identity(d, d));
        q_inv.push(Matrix::identity(d, d));
        for k in 0..n {
            let b0 = &generators[k] * -0.5;
            let b1 = &generators[k + 1] * -0.5;
            let bm = (&b0 + &b1) * 0.5;
            let (p, w) = rk4_propagators(&b0, &bm, &b1, dt);
            let bq = (&b0 + &b1 * 3.0) * 0.25;
            let (hp, _) = rk4_propagators(&bm, &bq, &b1, 0.5 * dt);
            let next = &p * &q[k];
            if !all_finite(next.as_slice()) {
                return Err(Error::NonFinite { step: k + 1 });
            }
            let inv = next
                .clone()
                .lu()
                .try_inverse()
                .ok_or(Error::IllConditioned { step: k + 1, condition: f64::INFINITY })?;
            let cond = op_norm(&next) * op_norm(&inv);
            if !(cond <= CONDITION_GUARD) {
                return Err(Error::IllConditioned { step: k + 1, condition: cond });
            }
            q.push(next);
            q_inv.push(inv);
            phi.push(p);
            weights.push(w);
            half.push(hp);
        }
        Ok(DampedFlow {
            dt,
            generators,
            q,
            q_inv,
            phi,
            weights,
            half,
            lambda_minus: (-lambda_min).max(0.0),
        })
    }

    pub fn steps(&self) -> usize {
        self.phi.len()
    }

    pub fn dim(&self) -> usize {
        self.q[0].nrows()
    }

    /// Q_{t,s} = Q_{t,0} Q_{s,0}⁻¹ for grid indices t ≥ s.
    pub fn between(&self, t: usize, s: usize) -> Matrix {
        &self.q[t] * &self.q_inv[s]
    }

    /// max over (t, s) of ‖Q_{t,s}‖ / e^{k(t−s)/2}.
    pub fn norm_bound_ratio(&self, k: f64, pairs: &[(usize, usize)]) -> f64 {
        pairs
            .iter()
            .map(|&(t, s)| op_norm(&self.between(t, s)) / (0.5 * k * (t - s) as f64 * self.dt).exp())
            .fold(0.0, f64::max)
    }

    /// max ‖Q_{t,0} − Q_{t,s}Q_{s,0}‖ over the given pairs.
    pub fn cocycle_error(&self, pairs: &[(usize, usize)]) -> f64 {
        pairs
            .iter()
            .map(|&(t, s)| crate::linalg::max_abs(&(&self.q[t] - self.between(t, s) * &self.q[s])))
            .fold(0.0, f64::max)
    }
}

/// RK4 on dQ/dt = −½ Ric_Z^#(u_t) Q with the generator evaluated at the grid
/// frames and averaged at interior stages.
pub fn solve_damped_flow<G: Geometry + ?Sized>(model: &G, path: &HorizontalPath) -> Result<DampedFlow> {
    path.require_complete()?;
    let mut gens = Vec::with_capacity(path.points.len());
    for k in 0..path.points.len() {
        gens.push(ricci_z_operator(model, &path.frame(k)).map_err(|_| Error::NonFinite { step: k })?);
    }
    DampedFlow::from_generators(path.dt, gens)
}

/// h̃ solving dh̃/dt + ½Ric_Z^# h̃ = ḣ, h̃(0) = 0, by the same RK4 scheme.
pub fn resolvent_shift(h: &CameronMartinPath, flow: &DampedFlow) -> Result<CameronMartinPath> {
    if h.steps() != flow.steps() || h.dim() != flow.dim() {
        return Err(Error::Contract("Cameron–Martin path does not match the flow grid".into()));
    }
    let mut values = Vec::with_capacity(h.steps() + 1);
    let mut cur = Vector::zeros(h.dim());
    values.push(cur.clone());
    for k in 0..h.steps() {
        cur = &flow.phi[k] * &cur + &flow.weights[k] * &h.hdot[k];
        values.push(cur.clone());
    }
    CameronMartinPath::from_values(h.dt, &values)
}
