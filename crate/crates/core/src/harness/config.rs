use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{parse_model_spec, read_structured, SparseEntries};
use crate::processes::custom_model;
use crate::spectral::{HVector, SpectralModel, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    CoverageKnown,
    CoverageUnknown,
    Level,
    Unbiasedness,
    Moments,
    Independence,
    NoiseLaw,
    Risk,
    LearningCurve,
}

impl ExperimentKind {
    pub fn label(self) -> &'static str {
        match self {
            ExperimentKind::CoverageKnown => "coverage_known",
            ExperimentKind::CoverageUnknown => "coverage_unknown",
            ExperimentKind::Level => "level",
            ExperimentKind::Unbiasedness => "unbiasedness",
            ExperimentKind::Moments => "moments",
            ExperimentKind::Independence => "independence",
            ExperimentKind::NoiseLaw => "noise_law",
            ExperimentKind::Risk => "risk",
            ExperimentKind::LearningCurve => "learning_curve",
        }
    }
}

/// `"wiener:256"`, `"bridge:64"`, a model file path, or an inline spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Named(String),
    Inline {
        eigenvalues: Vec<f64>,
        #[serde(default)]
        tail_trace: f64,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<SpectralModel> {
        match self {
            ModelSpec::Named(spec) => parse_model_spec(spec),
            ModelSpec::Inline { eigenvalues, tail_trace } => custom_model(eigenvalues.clone(), *tail_trace),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModelSpec::Named(spec) => spec.clone(),
            ModelSpec::Inline { eigenvalues, .. } => format!("custom:{}", eigenvalues.len()),
        }
    }
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec::Named("wiener:256".into())
    }
}

/// One Monte Carlo experiment. Mode lists and sparse vectors use 1-based
/// mode indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Option<ExperimentKind>,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub u: Vec<usize>,
    #[serde(default)]
    pub u0: Option<Vec<usize>>,
    #[serde(default)]
    pub b: Option<SparseEntries>,
    #[serde(default)]
    pub zeta: SparseEntries,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    /// Include the analytic tail trace in `tau` for `ŝ²`. Simulated draws are
    /// truncated, so Monte Carlo runs default to the truncated trace.
    #[serde(default)]
    pub use_tail: bool,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
}

fn default_sigma() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    0.05
}

fn default_replicates() -> usize {
    100_000
}

fn default_parallel() -> bool {
    true
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, model: ModelSpec) -> Self {
        Self {
            kind: Some(kind),
            model,
            u: Vec::new(),
            u0: None,
            b: None,
            zeta: Vec::new(),
            sigma: default_sigma(),
            alpha: default_alpha(),
            replicates: default_replicates(),
            seed: 0,
            use_tail: false,
            parallel: default_parallel(),
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        read_structured(path)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates < 2 {
            return Err(Error::Config("replicates must be at least 2".into()));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Config(format!("sigma = {} must be positive", self.sigma)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha = {} must lie in (0, 1)", self.alpha)));
        }
        Ok(())
    }

    pub(crate) fn resolve(&self) -> Result<Resolved> {
        self.validate()?;
        let model = self.model.build()?;
        let dim = model.dim();
        let u = Subspace::modes(dim, &self.u)?;
        let u0 = self.u0.as_ref().map(|m| Subspace::modes(dim, m)).transpose()?;
        let b = self.b.as_ref().map(|e| HVector::from_modes(dim, e)).transpose()?;
        let zeta = HVector::from_modes(dim, &self.zeta)?;
        Ok(Resolved { model, u, u0, b, zeta })
    }
}

pub(crate) struct Resolved {
    pub model: SpectralModel,
    pub u: Subspace,
    pub u0: Option<Subspace>,
    pub b: Option<HVector>,
    pub zeta: HVector,
}
