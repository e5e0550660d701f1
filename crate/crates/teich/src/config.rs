//! JSON config files mirroring the command-line flags.
//!
//! ```json
//! {
//!   "check": "poisson",
//!   "basepoint": [0.0, 1.0],
//!   "tolerances": { "poisson": 1e-7 },
//!   "seed": 42,
//!   "output": "report.json",
//!   "format": "json",
//!   "timing": false
//! }
//! ```
//!
//! Every key is optional and unknown keys are rejected. Omitted tolerances
//! keep their defaults; flags given on the command line win over the file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::verify::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub check: Option<String>,
    pub basepoint: Option<[f64; 2]>,
    pub tolerances: Option<Tolerances>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub timing: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
}

pub fn parse_config(text: &str) -> serde_json::Result<FileConfig> {
    serde_json::from_str(text)
}

pub fn load_config(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text).map_err(|source| ConfigError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_tolerances_keep_defaults() {
        let c = parse_config(r#"{"tolerances": {"poisson": 1e-7}, "format": "csv"}"#).unwrap();
        let t = c.tolerances.unwrap();
        assert_eq!(t.poisson, 1e-7);
        assert_eq!(t.rays, Tolerances::default().rays);
        assert_eq!(c.format, Some(Format::Csv));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(parse_config(r#"{"sed": 1}"#).is_err());
        assert!(parse_config(r#"{"tolerances": {"poison": 1e-7}}"#).is_err());
        assert!(parse_config(r#"{"format": "xml"}"#).is_err());
    }

    #[test]
    fn empty_object_is_all_defaults() {
        assert_eq!(parse_config("{}").unwrap(), FileConfig::default());
    }
}
