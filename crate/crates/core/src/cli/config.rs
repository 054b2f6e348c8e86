//! TOML run configuration.
//!
//! ```toml
//! target = "income"
//! by-x = "gender"
//! coverage = 0.99
//! color = "10,90,30"
//!
//! [types]
//! income = "continuous"
//!
//! [levels]
//! gender = ["male", "female"]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Every field is optional; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub target: Option<String>,
    pub by_x: Option<String>,
    pub by_y: Option<String>,
    pub compose: Option<String>,
    pub classes: Option<usize>,
    pub coverage: Option<f64>,
    pub lower_bound: Option<f64>,
    pub bins: Option<usize>,
    pub bandwidth: Option<f64>,
    pub gamma: Option<f64>,
    pub color: Option<String>,
    pub color2: Option<String>,
    pub k: Option<f64>,
    pub d_base: Option<f64>,
    pub seed: Option<u64>,
    pub dots: Option<bool>,
    pub median: Option<bool>,
    pub min_count: Option<usize>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub types: BTreeMap<String, String>,
    #[serde(default)]
    pub levels: BTreeMap<String, Vec<String>>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}
