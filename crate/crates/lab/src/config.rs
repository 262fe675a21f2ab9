use std::path::{Path, PathBuf};

use dlpp_core::network::JMode;
use serde::{Deserialize, Serialize};

use crate::{LabError, Result};

/// How the last branching point is located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Geometric,
    Poisson,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        JMode::from(self).as_str()
    }
}

impl From<Mode> for JMode {
    fn from(m: Mode) -> JMode {
        match m {
            Mode::Geometric => JMode::Geometric,
            Mode::Poisson => JMode::Poisson,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(Mode::Geometric),
            "poisson" => Ok(Mode::Poisson),
            _ => Err(LabError::Invalid(format!("unknown mode {s:?} (geometric or poisson)"))),
        }
    }
}

/// Parameters shared by all experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub t_list: Vec<f64>,
    pub replicas: usize,
    /// Endpoint separation exponent.
    pub nu: f64,
    /// Depth exponent.
    pub mu: f64,
    /// Separation amplitude.
    pub y: f64,
    /// Slope parameter of the endpoint `(t(1 − k), t(1 + k))`.
    pub k: f64,
    pub mode: Mode,
    pub origin_apexes: bool,
    /// Worker threads; `None` uses all cores. Results do not depend on it.
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub svg_output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            master_seed: 0,
            t_list: vec![100.0],
            replicas: 10,
            nu: 2.0 / 3.0,
            mu: 0.5,
            y: 1.0,
            k: 0.0,
            mode: Mode::Geometric,
            origin_apexes: true,
            workers: None,
            output: None,
            svg_output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| LabError::Input {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            LabError::Config(m) => LabError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(LabError::Invalid(m.to_owned()));
        if self.t_list.is_empty() {
            return bad("t_list must not be empty");
        }
        if self.t_list.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return bad("every t must be positive and finite");
        }
        if self.replicas == 0 {
            return bad("replicas must be at least 1");
        }
        if !(0.0..1.0).contains(&self.nu) {
            return bad("nu must lie in [0, 1)");
        }
        if !(0.0..1.0).contains(&self.mu) {
            return bad("mu must lie in [0, 1)");
        }
        if self.y == 0.0 || !self.y.is_finite() {
            return bad("y must be finite and non-zero");
        }
        if !(self.k > -1.0 && self.k < 1.0) {
            return bad("k must lie in (-1, 1)");
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let cfg = ExperimentConfig {
            master_seed: 7,
            t_list: vec![100.0, 200.0],
            mode: Mode::Poisson,
            output: Some("out.csv".into()),
            ..Default::default()
        };
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn snake_case_keys_and_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"master_seed": 3, "t_list": [50], "mode": "poisson"}"#).unwrap();
        assert_eq!(cfg.master_seed, 3);
        assert_eq!(cfg.mode, Mode::Poisson);
        assert_eq!(cfg.replicas, 10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ExperimentConfig::from_json("{"), Err(LabError::Config(_))));
        assert!(matches!(ExperimentConfig::from_json(r#"{"tlist": [1]}"#), Err(LabError::Config(_))));
        for bad in [
            r#"{"mu": 1.0}"#,
            r#"{"nu": -0.1}"#,
            r#"{"replicas": 0}"#,
            r#"{"y": 0}"#,
            r#"{"k": 1}"#,
            r#"{"t_list": []}"#,
            r#"{"t_list": [0]}"#,
        ] {
            assert!(matches!(ExperimentConfig::from_json(bad), Err(LabError::Invalid(_))), "{bad}");
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("geometric".parse::<Mode>().unwrap(), Mode::Geometric);
        assert!("other".parse::<Mode>().is_err());
        assert_eq!(Mode::Poisson.as_str(), "poisson");
    }
}
