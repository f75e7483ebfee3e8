//! Conformal changes g′ = f⁻²g of a chart model: connection, Ricci form and
//! drift of the new metric, the cutoff chain f_n = h_n(ρ̃), and numeric probes
//! of the curvature and Laplacian bounds built from them.

mod checks;
mod cutoff;
mod factor;
mod formulas;
mod model;

pub use checks::{approx_curvature_bound, laplacian_comparison, CurvatureBoundReport, LaplacianReport, LaplacianRow};
pub use cutoff::{cutoff_chain, h0, smooth_radius, smoothstep5, CutoffChain, CutoffMember, Envelope};
pub use factor::{ConformalFactor, ConstantFactor, FactorSpec, GaussianBump};
pub use formulas::{
    conformal_christoffel, conformal_connection_diff, conformal_ricci, conformal_ricci_fd_deviation, containment_ratio, covariant_derivative,
    covariant_hessian, tensor_norm, transformed_drift, transformed_drift_squared_form, ConnectionReport, TrigField,
    FD_CHRISTOFFEL_STEP, NEAR_BOUNDARY,
};
pub use model::ConformalModel;
