//! The JSON run configuration: one document drives a whole batch run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use vp_core::modulus::TestFunctionSpec;
use vp_core::quad::QuadratureConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandName {
    Approximate,
    Bounds,
    Constants,
    Holder,
    Verify,
}

impl CommandName {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Approximate => "approximate",
            Self::Bounds => "bounds",
            Self::Constants => "constants",
            Self::Holder => "holder",
            Self::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PPolicy {
    #[default]
    HalfN,
    Explicit(Vec<usize>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub plot: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<CommandName>,
    #[serde(default)]
    pub functions: Vec<TestFunctionSpec>,
    #[serde(default)]
    pub n_values: Vec<usize>,
    #[serde(default)]
    pub p_policy: PPolicy,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    /// JSON field path of the offending entry.
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|e| {
            ConfigError::new(
                path.display().to_string(),
                format!("cannot read config: {e}"),
            )
        })?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| {
            ConfigError::new(
                path.display().to_string(),
                format!("invalid config JSON: {e}"),
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Err(e) = self.quadrature.validate() {
            return Err(ConfigError::new("quadrature", e.to_string()));
        }
        for (i, n) in self.n_values.iter().enumerate() {
            if *n == 0 {
                return Err(ConfigError::new(
                    format!("n_values[{i}]"),
                    "n must be positive",
                ));
            }
            if self.p_policy == PPolicy::HalfN && n % 2 != 0 {
                return Err(ConfigError::new(
                    format!("n_values[{i}]"),
                    format!("n = {n} must be even under p_policy = half_n"),
                ));
            }
        }
        if let PPolicy::Explicit(ps) = &self.p_policy {
            if ps.is_empty() {
                return Err(ConfigError::new(
                    "p_policy.explicit",
                    "p list must be nonempty",
                ));
            }
            for (i, p) in ps.iter().enumerate() {
                if *p == 0 {
                    return Err(ConfigError::new(
                        format!("p_policy.explicit[{i}]"),
                        "p must be positive",
                    ));
                }
                for (j, n) in self.n_values.iter().enumerate() {
                    if p > n {
                        return Err(ConfigError::new(
                            format!("p_policy.explicit[{i}]"),
                            format!("p = {p} exceeds n_values[{j}] = {n}"),
                        ));
                    }
                }
            }
        }
        for (i, spec) in self.functions.iter().enumerate() {
            if let Err(e) = vp_core::modulus::make_test_function(spec) {
                return Err(ConfigError::new(format!("functions[{i}]"), e.to_string()));
            }
        }
        Ok(())
    }

    /// The (n, p) pairs this run covers, in config order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            match &self.p_policy {
                PPolicy::HalfN => out.push((n, n / 2)),
                PPolicy::Explicit(ps) => {
                    for &p in ps {
                        out.push((n, p));
                    }
                }
            }
        }
        out
    }
}
