use thiserror::Error;

/// Every fallible operation in the crate returns this error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite geometry evaluation ({what}) at {point:?}")]
    Evaluation { what: String, point: Vec<f64> },

    #[error("point {point:?} outside the chart domain: {what}")]
    Domain { what: String, point: Vec<f64> },

    #[error("geodesic solver did not converge (residual {residual:e})")]
    GeodesicNonConvergence { residual: f64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("path exploded at grid index {step}; rejected")]
    ExplodedPath { step: usize },

    #[error("non-finite matrix entries at step {step}")]
    NonFinite { step: usize },

    #[error("ill-conditioned resolvent at step {step} (condition estimate {condition:e})")]
    IllConditioned { step: usize, condition: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{atoms} atoms exceed the exact LP cap of {cap} per side; use w2_sinkhorn")]
    AtomCapExceeded { atoms: usize, cap: usize },

    #[error("transport solver stopped after {iterations} iterations (residual {residual:e})")]
    SolverNonConvergence { iterations: usize, residual: f64 },

    #[error("relative entropy undefined: F vanishes on every sample")]
    ZeroFunctional,

    #[error("curvature bound fails for K = {k}: min eigenvalue {min_eigenvalue} found")]
    CurvatureCheckFailed { k: f64, min_eigenvalue: f64 },

    #[error("conformal factor {value:e} below 1e-8 at {point:?}")]
    NearBoundary { value: f64, point: Vec<f64> },

    #[error("coupling aborted at step {step}: {reason}")]
    CouplingAbort { step: usize, reason: String },

    #[error("gradient oracle failed at slot {slot}: {reason}")]
    GradientOracle { slot: usize, reason: String },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn eval(what: impl Into<String>, point: &[f64]) -> Self {
        Error::Evaluation {
            what: what.into(),
            point: point.to_vec(),
        }
    }

    pub(crate) fn domain(what: impl Into<String>, point: &[f64]) -> Self {
        Error::Domain {
            what: what.into(),
            point: point.to_vec(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
