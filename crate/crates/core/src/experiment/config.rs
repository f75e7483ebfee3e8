use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::conformal::Envelope;
use crate::damped_gradient::CylindricalFunction;
use crate::error::{Error, Result};
use crate::geometry::ModelSpec;
use crate::linalg::Vector;
use crate::stochastic::EnsembleSpec;

/// What a config runs; also the CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Talagrand,
    TalagrandMarginal,
    Freepath,
    Lsi,
    Ibp,
    Coupling,
    Example11,
    ConformalCheck,
    LaplacianComparison,
    AiEllipticity,
}

impl ExperimentKind {
    pub fn id(&self) -> &'static str {
        match self {
            ExperimentKind::Talagrand => "talagrand",
            ExperimentKind::TalagrandMarginal => "talagrand-marginal",
            ExperimentKind::Freepath => "freepath",
            ExperimentKind::Lsi => "lsi",
            ExperimentKind::Ibp => "ibp",
            ExperimentKind::Coupling => "coupling",
            ExperimentKind::Example11 => "example11",
            ExperimentKind::ConformalCheck => "conformal-check",
            ExperimentKind::LaplacianComparison => "laplacian-comparison",
            ExperimentKind::AiEllipticity => "ai-ellipticity",
        }
    }

    pub const ALL: [ExperimentKind; 10] = [
        ExperimentKind::Talagrand,
        ExperimentKind::TalagrandMarginal,
        ExperimentKind::Freepath,
        ExperimentKind::Lsi,
        ExperimentKind::Ibp,
        ExperimentKind::Coupling,
        ExperimentKind::Example11,
        ExperimentKind::ConformalCheck,
        ExperimentKind::LaplacianComparison,
        ExperimentKind::AiEllipticity,
    ];
}

/// Named path functional F(γ) = f(γ_{t_1}, …, γ_{t_N}). Times default to T.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionalSpec {
    Constant {
        value: f64,
        time: Option<f64>,
    },
    Linear {
        a: Vec<f64>,
        time: Option<f64>,
    },
    GaussianTilt {
        theta: f64,
        #[serde(default)]
        coord: usize,
        time: Option<f64>,
    },
    SqrtGaussianTilt {
        theta: f64,
        #[serde(default)]
        coord: usize,
        time: Option<f64>,
    },
    Battery {
        index: u64,
        times: Vec<f64>,
    },
}

impl FunctionalSpec {
    pub fn build(&self, horizon: f64, ambient_dim: usize) -> Result<CylindricalFunction> {
        let at = |t: &Option<f64>| t.unwrap_or(horizon);
        let coord_ok = |c: usize| {
            if c < ambient_dim {
                Ok(())
            } else {
                Err(Error::config("functional.coord", format!("coordinate {c} out of range for dimension {ambient_dim}")))
            }
        };
        Ok(match self {
            FunctionalSpec::Constant { value, time } => CylindricalFunction::constant(*value, at(time)),
            FunctionalSpec::Linear { a, time } => {
                if a.len() != ambient_dim {
                    return Err(Error::config("functional.a", "length must equal the ambient dimension"));
                }
                CylindricalFunction::linear(Vector::from_column_slice(a), at(time))
            }
            FunctionalSpec::GaussianTilt { theta, coord, time } => {
                coord_ok(*coord)?;
                CylindricalFunction::gaussian_tilt(*theta, *coord, at(time))
            }
            FunctionalSpec::SqrtGaussianTilt { theta, coord, time } => {
                coord_ok(*coord)?;
                CylindricalFunction::sqrt_gaussian_tilt(*theta, *coord, at(time))
            }
            FunctionalSpec::Battery { index, times } => {
                CylindricalFunction::smooth_battery(*index, ambient_dim, times.clone())?
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricChoice {
    #[default]
    Uniform,
    Endpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialSpec {
    PointMass,
    Gaussian { std: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_certificate_tol")]
    pub certificate: f64,
    #[serde(default = "default_coupling_tol")]
    pub coupling: f64,
    #[serde(default = "default_ellipticity")]
    pub ellipticity: f64,
    /// Relative change under sample doubling for a stable exp-moment.
    #[serde(default = "default_stability")]
    pub stability: f64,
}

fn default_certificate_tol() -> f64 {
    0.15
}
fn default_coupling_tol() -> f64 {
    0.05
}
fn default_ellipticity() -> f64 {
    0.9
}
fn default_stability() -> f64 {
    0.1
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { certificate: 0.15, coupling: 0.05, ellipticity: 0.9, stability: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportSection {
    #[serde(default)]
    pub metric: MetricChoice,
    /// Starting law for freepath.
    pub initial: Option<InitialSpec>,
    /// Talagrand constant of the initial law.
    pub c0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IbpSection {
    /// Direction of the constant-speed Cameron–Martin path h(t) = t·v.
    pub direction: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSection {
    pub rho0: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example11Section {
    pub deltas: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// Explosion fraction expected for δ > 1.
    #[serde(default = "default_min_explosion")]
    pub min_explosion: f64,
}

fn default_min_explosion() -> f64 {
    0.95
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub envelope: Envelope,
    pub members: Vec<f64>,
    #[serde(default = "one")]
    pub c1: f64,
    /// Sample points per member.
    #[serde(default = "default_chain_samples")]
    pub samples: usize,
}

fn one() -> f64 {
    1.0
}
fn default_chain_samples() -> usize {
    400
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformalSection {
    #[serde(default = "default_conformal_points")]
    pub points: usize,
    #[serde(default = "default_fields")]
    pub fields: usize,
    /// Points are drawn uniformly from the box [−radius, radius]^d.
    #[serde(default = "one")]
    pub radius: f64,
    pub chain: Option<ChainSection>,
}

fn default_conformal_points() -> usize {
    64
}
fn default_fields() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaplacianSection {
    pub envelope: Envelope,
    pub radii: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticitySection {
    /// Upper bound K₁ with Ric_Z ≤ K₁ along paths.
    pub k1: f64,
    /// One chart point per partition time; defaults to the origin.
    pub anchor: Option<Vec<Vec<f64>>>,
    pub bandwidth: Option<f64>,
}

/// A complete, self-describing experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    pub model: ModelSpec,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: Option<u64>,
    /// Curvature constant K with Ric − ∇Z ≥ −K.
    #[serde(default)]
    pub k: f64,
    pub functional: Option<FunctionalSpec>,
    /// Partition times s_1 < … < s_N on the grid.
    pub partition: Option<Vec<f64>>,
    #[serde(default)]
    pub tolerance: Tolerances,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub record_wall_time: bool,
    /// Step-halving for stiff drifts.
    #[serde(default)]
    pub adaptive: bool,
    #[serde(default)]
    pub transport: TransportSection,
    #[serde(default)]
    pub ibp: IbpSection,
    pub coupling: Option<CouplingSection>,
    pub example11: Option<Example11Section>,
    pub conformal: Option<ConformalSection>,
    pub laplacian: Option<LaplacianSection>,
    pub ellipticity: Option<EllipticitySection>,
}

impl ExperimentConfig {
    /// Parses TOML; errors carry the offending field path.
    pub fn from_toml(text: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text).map_err(|e| Error::config("<document>", e.to_string()))?;
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(path, e.into_inner().to_string())
        })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), format!("cannot read config: {e}")))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config("<document>", e.to_string()))
    }

    /// The experiment kind, reconciling the file with a requested subcommand.
    pub fn kind(&self, requested: Option<ExperimentKind>) -> Result<ExperimentKind> {
        match (self.experiment, requested) {
            (Some(a), Some(b)) if a != b => Err(Error::config(
                "experiment",
                format!("config is for `{}` but `{}` was requested", a.id(), b.id()),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::config("experiment", "missing experiment kind")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::config("T", "must be positive and finite"));
        }
        if self.n_steps < 16 {
            return Err(Error::config("n_steps", "must be at least 16"));
        }
        if self.n_paths < 64 {
            return Err(Error::config("n_paths", "must be at least 64"));
        }
        if self.seed.is_none() {
            return Err(Error::config("seed", "a seed is required"));
        }
        if !(self.k >= 0.0 && self.k.is_finite()) {
            return Err(Error::config("k", "must be nonnegative and finite"));
        }
        let t = &self.tolerance;
        for (name, v) in [
            ("tolerance.certificate", t.certificate),
            ("tolerance.coupling", t.coupling),
            ("tolerance.ellipticity", t.ellipticity),
            ("tolerance.stability", t.stability),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(name, "must be nonnegative and finite"));
            }
        }
        if let Some(p) = &self.partition {
            if p.is_empty() || p.windows(2).any(|w| !(w[0] < w[1])) || p[0] <= 0.0 || p[p.len() - 1] > self.horizon {
                return Err(Error::config("partition", "times must increase strictly within (0, T]"));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn ensemble(&self, workers: usize) -> EnsembleSpec {
        EnsembleSpec::new(self.horizon, self.n_steps, self.n_paths, self.seed()).with_workers(workers)
    }

    /// Echo of the shared parameters for the report.
    pub fn echo(&self) -> String {
        format!("T={};n_steps={};n_paths={};seed={};K={}", self.horizon, self.n_steps, self.n_paths, self.seed(), self.k)
    }
}
