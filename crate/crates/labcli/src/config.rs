use std::fmt;
use std::path::Path;

use quasizeno::models::{ModelSpec, ObservableSpec};
use quasizeno::zeno::{DEFAULT_ORDER, DEFAULT_ZENO_WARN_THRESHOLD, MAX_ORDER};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Effective,
    Qzd,
    Trajectories,
    Compare,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Effective => "effective",
            Mode::Qzd => "qzd",
            Mode::Trajectories => "trajectories",
            Mode::Compare => "compare",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Mode::Exact, Mode::Effective, Mode::Qzd, Mode::Trajectories, Mode::Compare]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Either a basis label or explicit amplitudes given as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum InitialState {
    Label { label: Vec<i32> },
    Amplitudes { amplitudes: Vec<[f64; 2]> },
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

fn default_one() -> usize {
    1
}

fn default_threshold() -> f64 {
    DEFAULT_ZENO_WARN_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub model: ModelSpec,
    pub observable: ObservableSpec,
    pub initial_state: InitialState,
    pub dt: f64,
    pub tau: f64,
    #[serde(default = "default_order")]
    pub order: usize,
    pub mode: Mode,
    #[serde(default)]
    pub n_trajectories: usize,
    #[serde(default)]
    pub seed: u64,
    /// Output path stem; extensions are added per file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Emit every k-th step; the final step is always emitted.
    #[serde(default = "default_one")]
    pub sample_every: usize,
    #[serde(default = "default_threshold")]
    pub zeno_warn_threshold: f64,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> LabResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Number of measurements N = τ/δt.
    pub fn steps(&self) -> usize {
        (self.tau / self.dt).round() as usize
    }

    /// Field-level checks that need no model construction.
    pub fn validate(&self) -> LabResult<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(LabError::config("dt", format!("must be positive, got {}", self.dt)));
        }
        if !(self.tau.is_finite() && self.tau >= self.dt) {
            return Err(LabError::config("tau", format!("must be at least dt = {}, got {}", self.dt, self.tau)));
        }
        let ratio = self.tau / self.dt;
        if (ratio - ratio.round()).abs() > 1e-9 {
            return Err(LabError::config("tau", format!("tau/dt = {ratio} is not an integer")));
        }
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(LabError::config("order", format!("must be in 1..={MAX_ORDER}, got {}", self.order)));
        }
        if self.sample_every == 0 {
            return Err(LabError::config("sample_every", "must be at least 1"));
        }
        if self.mode == Mode::Trajectories && self.n_trajectories == 0 {
            return Err(LabError::config("n_trajectories", "must be at least 1 in trajectories mode"));
        }
        if self.zeno_warn_threshold.is_nan() || self.zeno_warn_threshold <= 0.0 {
            return Err(LabError::config("zeno_warn_threshold", "must be positive"));
        }
        self.model.validate().map_err(|e| LabError::config("model", e))?;
        Ok(())
    }
}
