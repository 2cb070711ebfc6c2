use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use diracwell::spectrum::SweepRange;
use diracwell::Potential1D;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    SweepK,
    SweepV0,
    State,
    Landau,
    Verify,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Root-finding route for `spectrum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed-form square-well function.
    Closed,
    /// Transfer matrix across an arbitrary step profile.
    Transfer,
    /// Direct integration of the real first-order system.
    Shooting,
}

/// A number, or a `lo:hi:step` range for the swept parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Range(String),
}

impl FromStr for ParamValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains(':') {
            s.parse::<SweepRange>().map_err(|e| e.to_string())?;
            Ok(ParamValue::Range(s.to_string()))
        } else {
            s.trim()
                .parse::<f64>()
                .map(ParamValue::Number)
                .map_err(|_| format!("expected a number or lo:hi:step, got {s:?}"))
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Number(x) => write!(f, "{x}"),
            ParamValue::Range(r) => f.write_str(r),
        }
    }
}

/// Everything a run needs; built from flags or read from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub potential: Option<Potential1D>,
    #[serde(default)]
    pub k: Option<ParamValue>,
    #[serde(default)]
    pub v0: Option<ParamValue>,
    #[serde(default = "default_half_width")]
    pub half_width: f64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub level: Option<usize>,
    #[serde(default)]
    pub method: Option<Method>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

fn default_half_width() -> f64 {
    1.0
}

impl RunConfig {
    pub fn from_json_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    pub fn number(&self, name: &str, value: &Option<ParamValue>) -> Result<f64, CliError> {
        match value {
            Some(ParamValue::Number(x)) if x.is_finite() => Ok(*x),
            Some(ParamValue::Number(x)) => Err(CliError::Config(format!("--{name} must be finite, got {x}"))),
            Some(ParamValue::Range(r)) => Err(CliError::Config(format!(
                "--{name} must be a single number for {:?}, got range {r}",
                self.command
            ))),
            None => Err(CliError::Config(format!("--{name} is required for this command"))),
        }
    }

    pub fn range(&self, name: &str, value: &Option<ParamValue>) -> Result<SweepRange, CliError> {
        match value {
            Some(ParamValue::Range(r)) => r.parse().map_err(|e: diracwell::Error| CliError::Config(e.to_string())),
            Some(ParamValue::Number(x)) => Err(CliError::Config(format!(
                "--{name} must be a lo:hi:step range for a sweep, got {x}"
            ))),
            None => Err(CliError::Config(format!("--{name} range is required for this command"))),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(CliError::Config(format!(
                "half-width must be positive, got {}",
                self.half_width
            )));
        }
        if let Some(p) = &self.potential {
            p.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_values_parse() {
        assert_eq!("2.5".parse::<ParamValue>(), Ok(ParamValue::Number(2.5)));
        assert_eq!("0:8:0.1".parse::<ParamValue>(), Ok(ParamValue::Range("0:8:0.1".into())));
        assert!("0:8".parse::<ParamValue>().is_err());
        assert!("abc".parse::<ParamValue>().is_err());
    }

    #[test]
    fn json_config_round_trip() {
        let text = r#"{"command": "sweep-v0", "k": 3, "v0": "0:8:0.01", "format": "json"}"#;
        let config: RunConfig = serde_json::from_str(text).unwrap();
        assert_eq!(config.command, Command::SweepV0);
        assert_eq!(config.k, Some(ParamValue::Number(3.0)));
        assert_eq!(config.half_width, 1.0);
        assert_eq!(config.format, Format::Json);
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&config).unwrap()).unwrap();
        assert_eq!(back, config);
        assert!(serde_json::from_str::<RunConfig>(r#"{"command": "spectrum", "kk": 1}"#).is_err());
    }
}
