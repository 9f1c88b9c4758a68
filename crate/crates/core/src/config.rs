//! Size caps and run options, optionally loaded from a JSON file named by
//! the `EDLAB_CONFIG` environment variable.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CONFIG_ENV: &str = "EDLAB_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct Caps {
    /// Largest group stored as a full Cayley table.
    pub cayley: usize,
    /// Largest group whose bar complex is built.
    pub homology: usize,
    /// Largest `|H|` and `|K|` for the finitely presented pair products.
    pub fp_pair: usize,
    /// Coset table row limit for enumerations.
    pub coset_rows: usize,
    /// Largest permutation group closure.
    pub permutation_closure: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { cayley: 512, homology: 48, fp_pair: 12, coset_rows: 2_000_000, permutation_closure: 512 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Coset-table-driven definitions with a deduction stack and lookahead.
    #[default]
    Hlt,
    /// Definitions in table order, every deduction processed immediately.
    Felsch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct Config {
    pub caps: Caps,
    pub strategy: Strategy,
    /// Worker threads for sweeps; 0 lets the thread pool decide.
    pub parallelism: usize,
}

impl Config {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Reads the file named by `EDLAB_CONFIG`, or returns the defaults.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => Self::from_path(path),
            None => Ok(Config::default()),
        }
    }
}

impl Config {
    /// Runs `f` on a thread pool sized by `parallelism`.
    pub fn with_workers<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.parallelism).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let c: Config =
            serde_json::from_str(r#"{"caps": {"fp-pair": 16}, "strategy": "felsch"}"#).unwrap();
        assert_eq!(c.caps.fp_pair, 16);
        assert_eq!(c.caps.homology, 48);
        assert_eq!(c.strategy, Strategy::Felsch);
    }
}
