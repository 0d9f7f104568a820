use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Optimizer settings. Every field has a default, so a config file only
/// lists the keys it changes:
///
/// ```toml
/// restarts = 27
/// max_iters = 5000
/// tol_loglik = 1e-10
/// tol_simplex = 1e-9
/// ci_level = 0.95
/// tol_score = 1e-5
/// param_min = 1e-3
/// param_max = 1e3
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    /// Maximum number of multi-start points taken from the family's grid.
    pub restarts: usize,
    /// Iteration cap for each simplex run.
    pub max_iters: usize,
    /// Simplex stops once the spread of log-likelihoods is below this...
    pub tol_loglik: f64,
    /// ...and its diameter in log-parameter space is below this.
    pub tol_simplex: f64,
    pub ci_level: f64,
    /// Max-norm of the projected score required to call a fit converged.
    pub tol_score: f64,
    /// Every parameter is searched inside `[param_min, param_max]`.
    pub param_min: f64,
    pub param_max: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            restarts: 27,
            max_iters: 5000,
            tol_loglik: 1e-10,
            tol_simplex: 1e-9,
            ci_level: 0.95,
            tol_score: 1e-5,
            param_min: 1e-3,
            param_max: 1e3,
        }
    }
}

impl FitConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be >= 1");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be >= 1");
        }
        for (k, v) in [
            ("tol_loglik", self.tol_loglik),
            ("tol_simplex", self.tol_simplex),
            ("tol_score", self.tol_score),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{k} must be finite and > 0")));
            }
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return bad("ci_level must be in (0, 1)");
        }
        if !(self.param_min > 0.0 && self.param_min < self.param_max && self.param_max.is_finite()) {
            return bad("need 0 < param_min < param_max < inf");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_files() {
        let c = FitConfig::from_toml_str("restarts = 5\nci_level = 0.9\n").unwrap();
        assert_eq!(c.restarts, 5);
        assert_eq!(c.ci_level, 0.9);
        assert_eq!(c.max_iters, FitConfig::default().max_iters);
        assert_eq!(FitConfig::from_toml_str("").unwrap(), FitConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FitConfig::from_toml_str("restart = 5").is_err());
        assert!(FitConfig::from_toml_str("ci_level = 1.5").is_err());
        assert!(FitConfig::from_toml_str("restarts = 0").is_err());
        assert!(FitConfig::from_toml_str("param_min = 10.0\nparam_max = 1.0").is_err());
        assert!(FitConfig::from_toml_str("tol_score = -1.0").is_err());
    }

    #[test]
    fn reads_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fit.toml");
        std::fs::write(&path, "max_iters = 10\n").unwrap();
        assert_eq!(FitConfig::from_file(&path).unwrap().max_iters, 10);
        assert!(FitConfig::from_file(dir.path().join("missing.toml")).is_err());
    }
}
