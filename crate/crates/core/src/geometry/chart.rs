use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::Geometry;

/// Γ^k_ij stored as `data[(k * d + i) * d + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    d: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn zeros(d: usize) -> Self {
        Christoffel { d, data: vec![0.0; d * d * d] }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[(k * self.d + i) * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.data[(k * self.d + i) * self.d + j] = v;
    }

    #[inline]
    pub fn add(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.data[(k * self.d + i) * self.d + j] += v;
    }

    /// Γ(a, b)^k = Γ^k_ij a^i b^j.
    pub fn contract(&self, a: &Vector, b: &Vector) -> Vector {
        let d = self.d;
        let mut out = Vector::zeros(d);
        for k in 0..d {
            let mut s = 0.0;
            for i in 0..d {
                if a[i] == 0.0 {
                    continue;
                }
                for j in 0..d {
                    s += self.get(k, i, j) * a[i] * b[j];
                }
            }
            out[k] = s;
        }
        out
    }

    /// Matrix with entries Σ_m Γ^k_lm z^m at (k, l).
    pub fn contract_last(&self, z: &Vector) -> Matrix {
        let d = self.d;
        Matrix::from_fn(d, d, |k, l| (0..d).map(|m| self.get(k, l, m) * z[m]).sum())
    }

    pub fn max_abs_diff(&self, other: &Christoffel) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// max |Γ^k_ij − Γ^k_ji|.
    pub fn asymmetry(&self) -> f64 {
        let d = self.d;
        let mut worst = 0.0_f64;
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    worst = worst.max((self.get(k, i, j) - self.get(k, j, i)).abs());
                }
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Christoffel symbols from g and its partial derivatives dg[l] = ∂_l g.
pub fn christoffel_from_metric(g: &Matrix, dg: &[Matrix]) -> Result<Christoffel> {
    let d = g.nrows();
    let ginv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Contract("singular metric".into()))?;
    let mut gamma = Christoffel::zeros(d);
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                let mut s = 0.0;
                for l in 0..d {
                    s += ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                gamma.set(k, i, j, 0.5 * s);
            }
        }
    }
    Ok(gamma)
}

/// Christoffel symbols from centered finite differences of the metric.
pub fn fd_christoffel(
    metric: impl Fn(&Vector) -> Result<Matrix>,
    x: &Vector,
    h: f64,
) -> Result<Christoffel> {
    let d = x.len();
    let g = metric(x)?;
    let mut dg = Vec::with_capacity(d);
    for l in 0..d {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[l] += h;
        xm[l] -= h;
        dg.push((metric(&xp)? - metric(&xm)?) / (2.0 * h));
    }
    christoffel_from_metric(&g, &dg)
}

/// Ricci tensor R_ij = ∂_k Γ^k_ij − ∂_j Γ^k_ik + Γ^k_kl Γ^l_ij − Γ^k_jl Γ^l_ik,
/// with the derivatives of Γ taken by centered differences of step `h`.
pub fn fd_ricci(
    christoffel: impl Fn(&Vector) -> Result<Christoffel>,
    x: &Vector,
    h: f64,
) -> Result<Matrix> {
    let d = x.len();
    let gam = christoffel(x)?;
    // dgam[m] = ∂_m Γ
    let mut dgam = Vec::with_capacity(d);
    for m in 0..d {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[m] += h;
        xm[m] -= h;
        let gp = christoffel(&xp)?;
        let gm = christoffel(&xm)?;
        let mut diff = Christoffel::zeros(d);
        for (o, (a, b)) in diff.data.iter_mut().zip(gp.data.iter().zip(&gm.data)) {
            *o = (a - b) / (2.0 * h);
        }
        dgam.push(diff);
    }
    let mut ric = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut s = 0.0;
            for k in 0..d {
                s += dgam[k].get(k, i, j) - dgam[j].get(k, i, k);
                for l in 0..d {
                    s += gam.get(k, k, l) * gam.get(l, i, j) - gam.get(k, j, l) * gam.get(l, i, k);
                }
            }
            ric[(i, j)] = s;
        }
    }
    Ok(ric)
}

fn geodesic_rhs<G: Geometry + ?Sized>(
    model: &G,
    x: &Vector,
    v: &Vector,
    w: &[Vector],
) -> Result<(Vector, Vector, Vec<Vector>)> {
    if !model.in_domain(x) {
        return Err(Error::domain("geodesic left the chart", x.as_slice()));
    }
    let gam = model.christoffel(x)?;
    let acc = -gam.contract(v, v);
    let dw = w.iter().map(|wi| -gam.contract(v, wi)).collect();
    Ok((v.clone(), acc, dw))
}

/// Classical RK4 on the geodesic and parallel-transport equations, with a
/// step count proportional to the g-length of `v`.
pub fn geodesic_exp_transport<G: Geometry + ?Sized>(
    model: &G,
    x: &Vector,
    v: &Vector,
    w: &[Vector],
) -> Result<(Vector, Vec<Vector>)> {
    let len = crate::linalg::norm_g(&model.metric(x)?, v);
    if len == 0.0 {
        return Ok((x.clone(), w.to_vec()));
    }
    let steps = ((200.0 * len).ceil() as usize + 8).min(20_000);
    let h = 1.0 / steps as f64;
    let mut x = x.clone();
    let mut v = v.clone();
    let mut w = w.to_vec();
    for _ in 0..steps {
        let (k1x, k1v, k1w) = geodesic_rhs(model, &x, &v, &w)?;
        let shift = |a: &[Vector], b: &[Vector], s: f64| -> Vec<Vector> {
            a.iter().zip(b).map(|(ai, bi)| ai + bi * s).collect()
        };
        let (k2x, k2v, k2w) =
            geodesic_rhs(model, &(&x + &k1x * (0.5 * h)), &(&v + &k1v * (0.5 * h)), &shift(&w, &k1w, 0.5 * h))?;
        let (k3x, k3v, k3w) =
            geodesic_rhs(model, &(&x + &k2x * (0.5 * h)), &(&v + &k2v * (0.5 * h)), &shift(&w, &k2w, 0.5 * h))?;
        let (k4x, k4v, k4w) = geodesic_rhs(model, &(&x + &k3x * h), &(&v + &k3v * h), &shift(&w, &k3w, h))?;
        x += (k1x + k2x * 2.0 + k3x * 2.0 + k4x) * (h / 6.0);
        v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
        for (i, wi) in w.iter_mut().enumerate() {
            *wi += (&k1w[i] + &k2w[i] * 2.0 + &k3w[i] * 2.0 + &k4w[i]) * (h / 6.0);
        }
    }
    if !model.in_domain(&x) || !crate::linalg::all_finite(x.as_slice()) {
        return Err(Error::domain("geodesic left the chart", x.as_slice()));
    }
    Ok((x, w))
}

/// Residual tolerance of [`geodesic_log`], relative to 1 + |y|.
pub const SHOOTING_TOL: f64 = 1e-11;

/// Newton shooting for the initial velocity of the geodesic from x to y,
/// starting from the chart straight line and using a finite-difference Jacobian.
pub fn geodesic_log<G: Geometry + ?Sized>(model: &G, x: &Vector, y: &Vector) -> Result<Vector> {
    let d = x.len();
    let mut v = y - x;
    let target = SHOOTING_TOL * (1.0 + y.norm());
    let mut residual = f64::INFINITY;
    for _ in 0..60 {
        let (p, _) = geodesic_exp_transport(model, x, &v, &[])?;
        let r = &p - y;
        residual = r.norm();
        if residual <= target {
            return Ok(v);
        }
        let eps = 1e-6 * (1.0 + v.norm());
        let mut jac = Matrix::zeros(d, d);
        for j in 0..d {
            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[j] += eps;
            vm[j] -= eps;
            let (pp, _) = geodesic_exp_transport(model, x, &vp, &[])?;
            let (pm, _) = geodesic_exp_transport(model, x, &vm, &[])?;
            jac.set_column(j, &((pp - pm) / (2.0 * eps)));
        }
        let step = jac
            .lu()
            .solve(&r)
            .ok_or(Error::GeodesicNonConvergence { residual })?;
        // damped update keeps the iterate inside the chart
        let mut t = 1.0;
        loop {
            let cand = &v - &step * t;
            match geodesic_exp_transport(model, x, &cand, &[]) {
                Ok((pc, _)) if (&pc - y).norm() < residual || t < 1e-3 => {
                    v = cand;
                    break;
                }
                _ if t < 1e-3 => return Err(Error::GeodesicNonConvergence { residual }),
                _ => t *= 0.5,
            }
        }
    }
    Err(Error::GeodesicNonConvergence { residual })
}
