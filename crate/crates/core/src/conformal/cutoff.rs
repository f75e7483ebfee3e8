use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

use super::ConformalFactor;

/// Growth envelope ψ: strictly positive, nondecreasing, with ∫₀^∞ ds/ψ = ∞.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Envelope {
    Constant { a: f64 },
    /// a + b t
    Affine { a: f64, b: f64 },
    /// a + b t^p with 0 < p ≤ 1
    Power { a: f64, b: f64, p: f64 },
}

impl Envelope {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Envelope::Constant { a } => a > 0.0 && a.is_finite(),
            Envelope::Affine { a, b } => a > 0.0 && b >= 0.0 && a.is_finite() && b.is_finite(),
            Envelope::Power { a, b, p } => {
                if p > 1.0 && b > 0.0 {
                    return Err(Error::config(
                        "envelope.p",
                        format!("psi = a + b t^{p} has integrable 1/psi; need p <= 1"),
                    ));
                }
                a > 0.0 && b >= 0.0 && p > 0.0 && a.is_finite() && b.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::config("envelope", format!("{self:?} is not strictly positive and nondecreasing")))
        }
    }

    pub fn id(&self) -> String {
        match *self {
            Envelope::Constant { a } => format!("psi={a}"),
            Envelope::Affine { a, b } => format!("psi={a}+{b}t"),
            Envelope::Power { a, b, p } => format!("psi={a}+{b}t^{p}"),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Envelope::Constant { a } => a,
            Envelope::Affine { a, b } => a + b * t,
            Envelope::Power { a, b, p } => a + b * t.max(0.0).powf(p),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Envelope::Constant { .. } => 0.0,
            Envelope::Affine { b, .. } => b,
            Envelope::Power { b, p, .. } => {
                if t <= 0.0 {
                    if p < 1.0 {
                        f64::INFINITY
                    } else {
                        b
                    }
                } else {
                    b * p * t.powf(p - 1.0)
                }
            }
        }
    }

    /// I(s) = ∫₀^s dt/ψ(t+1) by adaptive Simpson quadrature.
    pub fn shifted_integral(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let f = |t: f64| 1.0 / self.value(t + 1.0);
        // split into geometrically growing panels so long ranges stay accurate
        let mut total = 0.0;
        let mut lo = 0.0;
        let mut hi = s.min(1.0);
        loop {
            total += adaptive_simpson(&f, lo, hi, 1e-13 * (hi - lo).max(1.0), 40);
            if hi >= s {
                break;
            }
            lo = hi;
            hi = (hi * 2.0).min(s);
        }
        total
    }

    /// Solves I(s) = target by bisection on a bracket found by doubling.
    pub fn invert_shifted_integral(&self, target: f64) -> Result<f64> {
        if !(target >= 0.0 && target.is_finite()) {
            return Err(Error::Contract(format!("invalid integral target {target}")));
        }
        let mut hi = 1.0;
        let mut guard = 0;
        while self.shifted_integral(hi) < target {
            hi *= 2.0;
            guard += 1;
            if guard > 2000 || !hi.is_finite() {
                return Err(Error::config("envelope", "integral of 1/psi does not reach the target"));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.shifted_integral(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-13 * hi.max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    ((b - a) / 6.0 * (f(a) + 4.0 * fm + f(b)), fm)
}

pub(crate) fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (left, _) = simpson(f, a, m);
        let (right, _) = simpson(f, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, left, 0.5 * tol, depth - 1) + rec(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let (whole, _) = simpson(f, a, b);
    rec(f, a, b, whole, tol, depth)
}

/// Standard quintic smoothstep 6t⁵ − 15t⁴ + 10t³ on [0, 1].
pub fn smoothstep5(t: f64) -> (f64, f64, f64) {
    if t <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if t >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let t2 = t * t;
    let t3 = t2 * t;
    (
        t3 * (10.0 + t * (6.0 * t - 15.0)),
        30.0 * t2 * (t - 1.0) * (t - 1.0),
        60.0 * t * (2.0 * t2 - 3.0 * t + 1.0),
    )
}

/// h₀ and its first two derivatives: 1 on [0,1], 0 on [2,∞), 1 − s₅(s−1) between.
pub fn h0(s: f64) -> (f64, f64, f64) {
    let (v, d1, d2) = smoothstep5(s - 1.0);
    (1.0 - v, -d1, -d2)
}

/// The family f_n = h_n(ρ̃) with h_n(s) = h₀(I(s)/n) and ρ̃ = √(1 + |x − o|²).
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffChain {
    pub psi: Envelope,
    pub center: Vector,
}

impl CutoffChain {
    pub fn new(psi: Envelope, dim: usize) -> Result<Self> {
        psi.validate()?;
        Ok(CutoffChain { psi, center: Vector::zeros(dim) })
    }

    pub fn member(&self, n: f64) -> Result<CutoffMember> {
        if !(n >= 2.0) {
            return Err(Error::Contract(format!("cutoff index n = {n} must be >= 2")));
        }
        let s_outer = self.psi.invert_shifted_integral(2.0 * n)?;
        let s_inner = self.psi.invert_shifted_integral(n)?;
        Ok(CutoffMember {
            psi: self.psi.clone(),
            center: self.center.clone(),
            n,
            rho_tilde_inner: s_inner,
            rho_tilde_outer: s_outer,
        })
    }
}

/// Convenience wrapper matching the chain-member constructor.
pub fn cutoff_chain(psi: &Envelope, dim: usize, n: f64) -> Result<CutoffMember> {
    CutoffChain::new(psi.clone(), dim)?.member(n)
}

/// The smooth radius ρ̃ = √(1+ρ²) with gradient and Hessian for a flat base.
pub fn smooth_radius(x: &Vector, center: &Vector) -> (f64, Vector, Matrix) {
    let y = x - center;
    let rt = (1.0 + y.norm_squared()).sqrt();
    let d = y.len();
    let grad = &y / rt;
    let hess = Matrix::identity(d, d) / rt - (&y * y.transpose()) / (rt * rt * rt);
    (rt, grad, hess)
}

/// f_n = h_n(ρ̃) on a flat base.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffMember {
    pub psi: Envelope,
    pub center: Vector,
    pub n: f64,
    /// ρ̃ below which f_n ≡ 1.
    pub rho_tilde_inner: f64,
    /// ρ̃ beyond which f_n ≡ 0.
    pub rho_tilde_outer: f64,
}

impl CutoffMember {
    /// h_n(s), h_n'(s), h_n''(s).
    pub fn profile(&self, s: f64) -> (f64, f64, f64) {
        if s <= self.rho_tilde_inner {
            return (1.0, 0.0, 0.0);
        }
        if s >= self.rho_tilde_outer {
            return (0.0, 0.0, 0.0);
        }
        let i = self.psi.shifted_integral(s);
        let (h, h1, h2) = h0(i / self.n);
        let p = self.psi.value(s + 1.0);
        let dp = self.psi.derivative(s + 1.0);
        let di = 1.0 / p;
        let ddi = -dp / (p * p);
        (h, h1 * di / self.n, h2 * di * di / (self.n * self.n) + h1 * ddi / self.n)
    }

    /// Support radius in ρ_o.
    pub fn support_radius_rho(&self) -> f64 {
        (self.rho_tilde_outer * self.rho_tilde_outer - 1.0).max(0.0).sqrt()
    }

    /// Radius in ρ_o of the ball on which f_n ≡ 1.
    pub fn plateau_radius_rho(&self) -> f64 {
        (self.rho_tilde_inner * self.rho_tilde_inner - 1.0).max(0.0).sqrt()
    }
}

impl ConformalFactor for CutoffMember {
    fn id(&self) -> String {
        format!("cutoff(n={},{})", self.n, self.psi.id())
    }
    fn value(&self, x: &Vector) -> f64 {
        let (rt, _, _) = smooth_radius(x, &self.center);
        self.profile(rt).0
    }
    fn gradient(&self, x: &Vector) -> Vector {
        let (rt, g, _) = smooth_radius(x, &self.center);
        g * self.profile(rt).1
    }
    fn hessian(&self, x: &Vector) -> Matrix {
        let (rt, g, h) = smooth_radius(x, &self.center);
        let (_, h1, h2) = self.profile(rt);
        (&g * g.transpose()) * h2 + h * h1
    }
    fn support_radius(&self) -> Option<f64> {
        Some(self.support_radius_rho())
    }
}
