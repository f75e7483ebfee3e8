//! Seeding, worker pools and order-independent reductions.

use rayon::prelude::*;

/// SplitMix64 finalizer applied to `master + φ·(index + 1)`.
///
/// The per-path seed depends only on the master seed and the path index, so an
/// ensemble is the same whichever worker produces each path.
pub fn mix64(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps `f` over `0..n` on a pool of `workers` threads (0 = rayon default) and
/// returns the results in index order.
pub fn par_map<T, F>(workers: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers == 1 {
        return (0..n).map(f).collect();
    }
    let run = || (0..n).into_par_iter().map(&f).collect::<Vec<T>>();
    if workers == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => (0..n).map(f).collect(),
    }
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
}

impl MeanSe {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return MeanSe { mean: f64::NAN, se: f64::NAN, n };
        }
        let mean = crate::linalg::compensated_sum(xs.iter().copied()) / n as f64;
        if n == 1 {
            return MeanSe { mean, se: f64::NAN, n };
        }
        let var = crate::linalg::compensated_sum(xs.iter().map(|x| (x - mean) * (x - mean)))
            / (n - 1) as f64;
        MeanSe {
            mean,
            se: (var / n as f64).sqrt(),
            n,
        }
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    crate::linalg::compensated_sum(xs.iter().copied()) / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixer_separates_neighbouring_indices() {
        let a = mix64(7, 0);
        let b = mix64(7, 1);
        assert_ne!(a, b);
        assert!((a ^ b).count_ones() > 10);
        assert_eq!(mix64(7, 0), a);
    }

    #[test]
    fn par_map_keeps_index_order() {
        let one = par_map(1, 100, |i| i * i);
        let many = par_map(8, 100, |i| i * i);
        assert_eq!(one, many);
    }

    #[test]
    fn mean_se_of_constant_has_zero_error() {
        let m = MeanSe::of(&[2.0; 10]);
        assert_eq!(m.mean, 2.0);
        assert_eq!(m.se, 0.0);
    }
}
