//! The resolvent flow Q_{t,s} along a path, damped gradients of cylindrical
//! functionals, and the certificates built on them.

mod certificates;
mod conditional;
mod cylindrical;
mod flow;
mod gradient;

pub use certificates::{ibp_residual, lsi_gap, Estimate, MAX_EXCLUSION};
pub use conditional::{ellipticity_floor, estimate_conditional_metric, ConditionalMetric, EllipticityReport, MIN_ESS};
pub use cylindrical::{CylindricalFunction, FD_GRADIENT_STEP};
pub use flow::{resolvent_shift, solve_damped_flow, DampedFlow, CONDITION_GUARD};
pub use gradient::{damped_energy_bound, damped_gradient_of, duality_sides, DampedGradient, EnergyBound};
