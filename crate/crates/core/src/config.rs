//! Optional TOML configuration, located by the `INFSG_CONFIG` environment
//! variable. Command-line flags override every field.
//!
//! ```toml
//! seed = 42
//! cases = 10000
//! depth = 5
//! max_arity = 6
//! max_len = 10
//! max_block = 5
//! families_max_len = 12
//! degree_max_len = 16
//! pseudonull_max_len = 512
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_words::{DEGREE_MAX_LEN, FAMILIES_MAX_LEN};

pub const CONFIG_ENV: &str = "INFSG_CONFIG";

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    pub cases: Option<usize>,
    pub depth: Option<usize>,
    pub max_arity: Option<usize>,
    pub max_len: Option<usize>,
    pub max_block: Option<usize>,
    pub families_max_len: Option<usize>,
    pub degree_max_len: Option<usize>,
    pub pseudonull_max_len: Option<usize>,
    pub reduce_max_len: Option<usize>,
}

/// Length caps for the word commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub reduce: usize,
    pub pseudonull: usize,
    pub degree: usize,
    pub families: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            reduce: 1 << 20,
            pseudonull: 512,
            degree: DEGREE_MAX_LEN,
            families: FAMILIES_MAX_LEN,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// The file named by `INFSG_CONFIG`, or the empty configuration.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Config::from_path(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }

    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            reduce: self.reduce_max_len.unwrap_or(d.reduce),
            pseudonull: self.pseudonull_max_len.unwrap_or(d.pseudonull),
            degree: self.degree_max_len.unwrap_or(d.degree),
            families: self.families_max_len.unwrap_or(d.families),
        }
    }
}
