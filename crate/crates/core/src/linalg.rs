//! Small dense helpers shared by the geometry and flow code.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn sym(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

/// Smallest eigenvalue of the symmetric part of `m`.
pub fn min_sym_eigenvalue(m: &Matrix) -> f64 {
    if m.nrows() == 1 {
        return m[(0, 0)];
    }
    sym(m).symmetric_eigenvalues().min()
}

pub fn max_sym_eigenvalue(m: &Matrix) -> f64 {
    if m.nrows() == 1 {
        return m[(0, 0)];
    }
    sym(m).symmetric_eigenvalues().max()
}

/// Spectral norm.
pub fn op_norm(m: &Matrix) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].abs();
    }
    let mtm = m.transpose() * m;
    mtm.symmetric_eigenvalues().max().max(0.0).sqrt()
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn all_finite(xs: &[f64]) -> bool {
    xs.iter().all(|v| v.is_finite())
}

/// Modified Gram–Schmidt of the columns of `e` against the inner product `g`,
/// run twice for stability.
pub fn gram_schmidt(g: &Matrix, e: &Matrix) -> Matrix {
    let mut out = e.clone();
    for _pass in 0..2 {
        for j in 0..out.ncols() {
            let mut col = out.column(j).into_owned();
            for i in 0..j {
                let prev = out.column(i).into_owned();
                let c = (prev.transpose() * g * &col)[(0, 0)];
                col -= prev * c;
            }
            let n = (col.transpose() * g * &col)[(0, 0)].sqrt();
            out.set_column(j, &(col / n));
        }
    }
    out
}

/// max |eᵀ g e − I|.
pub fn orthonormality_error(g: &Matrix, e: &Matrix) -> f64 {
    let gram = e.transpose() * g * e;
    let id = Matrix::identity(e.ncols(), e.ncols());
    max_abs(&(gram - id))
}

pub fn norm_g(g: &Matrix, v: &Vector) -> f64 {
    (v.transpose() * g * v)[(0, 0)].max(0.0).sqrt()
}

pub fn inner_g(g: &Matrix, a: &Vector, b: &Vector) -> f64 {
    (a.transpose() * g * b)[(0, 0)]
}

/// Neumaier-compensated sum; the order of `xs` is the only input to the result.
pub fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// (e^{Kt} − 1)/K with the limit t at K = 0.
pub fn expm1_over(k: f64, t: f64) -> f64 {
    if k.abs() < 1e-12 {
        t
    } else {
        (k * t).exp_m1() / k
    }
}
