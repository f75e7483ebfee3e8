//! Driving noise, stochastic development of horizontal paths, the derivative
//! flow of the Itô map and coupling by parallel displacement.

mod coupling;
mod derivative;
mod develop;
mod ensemble;
mod noise;

pub use coupling::{parallel_coupling, transport_frame, CoupledPaths};
pub use derivative::{derivative_flow, DerivativeFlow};
pub use develop::{develop_path, develop_path_with, develop_step, AdaptiveStepping, DevelopOptions, HorizontalPath};
pub use ensemble::EnsembleSpec;
pub use noise::{CameronMartinPath, DrivingNoise};

use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Maps partition times to grid indices; each time must lie on the grid
/// within 1e−9·dt and the result must be strictly increasing in (0, n].
pub fn partition_indices(times: &[f64], dt: f64, steps: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let k = (t / dt).round();
        if (k * dt - t).abs() > 1e-9 * dt.max(1.0) || k < 1.0 || k as usize > steps {
            return Err(Error::Contract(format!("partition time {t} is not an interior grid point")));
        }
        let k = k as usize;
        if out.last().is_some_and(|&p| p >= k) {
            return Err(Error::Contract("partition times must be strictly increasing".into()));
        }
        out.push(k);
    }
    Ok(out)
}

/// d_∞ on the grid, or d_I when `partition` (grid indices) is given.
pub fn uniform_distance<G: Geometry + ?Sized>(
    model: &G,
    a: &HorizontalPath,
    b: &HorizontalPath,
    partition: Option<&[usize]>,
) -> Result<f64> {
    if a.points.len() != b.points.len() || (a.dt - b.dt).abs() > 1e-15 * a.dt {
        return Err(Error::Contract("paths live on different grids".into()));
    }
    a.require_complete()?;
    b.require_complete()?;
    let mut worst = 0.0_f64;
    match partition {
        None => {
            for (x, y) in a.points.iter().zip(&b.points) {
                worst = worst.max(model.distance(x, y)?);
            }
        }
        Some(idx) => {
            for &k in idx {
                if k >= a.points.len() {
                    return Err(Error::Contract(format!("partition index {k} beyond the grid")));
                }
                worst = worst.max(model.distance(&a.points[k], &b.points[k])?);
            }
        }
    }
    Ok(worst)
}
