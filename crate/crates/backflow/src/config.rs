//! Run configuration, read from an optional JSON file. Command-line flags
//! override file values; `BACKFLOW_THREADS` overrides both.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use backflow_core::degeneracy::BETA_TOL;
use backflow_core::eigensystem::PhysicalConfig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const THREADS_ENV: &str = "BACKFLOW_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `beta` is ignored here; every command sets its own flux.
    pub units: PhysicalConfig,
    pub output_format: OutputFormat,
    pub threads: usize,
    /// Recognised keys: `beta`.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            units: PhysicalConfig::default(),
            output_format: OutputFormat::Csv,
            threads: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let u = &self.units;
        PhysicalConfig::new(u.hbar, u.mu, u.radius, u.beta)?;
        if self.threads == 0 {
            return Err(Error::Format("threads must be positive".into()));
        }
        for (key, value) in &self.tolerances {
            if key != "beta" {
                return Err(Error::Format(format!("unknown tolerance override `{key}`")));
            }
            if !(*value > 0.0) {
                return Err(Error::Format(format!("tolerance `{key}` must be positive")));
            }
        }
        Ok(())
    }

    pub fn beta_tol(&self) -> f64 {
        self.tolerances.get("beta").copied().unwrap_or(BETA_TOL)
    }

    /// Applies the flag and the environment override, in that order.
    pub fn resolve_threads(&mut self, flag: Option<usize>) -> Result<()> {
        if let Some(t) = flag {
            self.threads = t;
        }
        if let Ok(value) = std::env::var(THREADS_ENV) {
            self.threads = value.trim().parse().map_err(|_| {
                Error::Format(format!(
                    "{THREADS_ENV} must be a positive integer, got `{value}`"
                ))
            })?;
        }
        if self.threads == 0 {
            return Err(Error::Format("threads must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_uses_defaults() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"output_format": "json", "tolerances": {"beta": 1e-12}}"#)
                .unwrap();
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.units, PhysicalConfig::default());
        assert_eq!(cfg.beta_tol(), 1e-12);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"colour": 1}"#).is_err());
        let cfg: RunConfig = serde_json::from_str(r#"{"tolerances": {"gamma": 1e-3}}"#).unwrap();
        assert!(cfg.validate().is_err());
        let cfg: RunConfig =
            serde_json::from_str(r#"{"units": {"hbar": 0, "mu": 1, "radius": 1, "beta": 0}}"#)
                .unwrap();
        assert!(cfg.validate().is_err());
    }
}
