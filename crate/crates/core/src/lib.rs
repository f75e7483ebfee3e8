//! Stochastic development on model Riemannian manifolds, the damped Malliavin
//! gradient along its paths, and Monte-Carlo certificates for the
//! transportation-cost, log-Sobolev and coupling inequalities those gradients
//! control.
//!
//! The crate is organised by capability:
//!
//! * [`geometry`]: Euclidean space with drift, round spheres, hyperbolic space
//!   and conformal changes of ℝ^d, each with metric, Christoffel symbols,
//!   Ricci form, drift derivative, distance, exponential map and transport.
//! * [`stochastic`]: Brownian increments, development into horizontal paths,
//!   the derivative flow of the Itô map and coupling by parallel displacement.
//! * [`damped_gradient`]: the resolvent flow Q_{t,s}, damped gradients of
//!   cylindrical functionals, integration-by-parts and log-Sobolev
//!   certificates, and the conditional metric A^I.
//! * [`transport`]: exact and entropic W₂ between weighted path ensembles, and
//!   the Talagrand certificates on the full path and on finite partitions.
//! * [`conformal`]: conformal connection and Ricci formulas, cutoff chains and
//!   curvature-bound probes.
//! * [`experiment`]: config-driven runs producing CSV report rows; the
//!   `pathspace` binary is a thin wrapper around it.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --release --example develop_sphere
//! cargo run --release --example damped_flow
//! cargo run --release --example integration_by_parts
//! cargo run --release --example log_sobolev
//! cargo run --release --example talagrand_girsanov
//! cargo run --release --example freepath
//! cargo run --release --example hyperbolic_coupling
//! cargo run --release --example conditional_metric
//! cargo run --release --example conformal_checks
//! cargo run --release --example cutoff_chain
//! cargo run --release --example explosion_sweep
//! cargo run --release --example optimal_transport
//! cargo run --release --example run_config -- configs/talagrand.toml
//! ```

pub mod conformal;
pub mod damped_gradient;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod linalg;
pub mod parallel;
pub mod stochastic;
pub mod transport;

pub use error::{Error, Result};
pub use geometry::{Frame, Geometry, ManifoldModel};
pub use linalg::{Matrix, Vector};
