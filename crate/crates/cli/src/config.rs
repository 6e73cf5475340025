//! Settings from an optional TOML file, overridden by flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const THREADS_ENV: &str = "SPINSEC_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    /// Upper rank for verify suites.
    pub max_rank: usize,
    /// Upper rank accepted by `decompose`.
    pub decompose_max_rank: usize,
    /// Upper rank for the quartic tables and suite.
    pub quartic_max_rank: usize,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 42,
            trials: 20,
            max_rank: 8,
            decompose_max_rank: 16,
            quartic_max_rank: 10,
            threads: None,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let cfg: Config = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?;
        if cfg.quartic_max_rank > spinsec::secant::S4_MAX_RANK {
            return Err(CliError::Usage(format!(
                "quartic_max_rank {} above {}",
                cfg.quartic_max_rank,
                spinsec::secant::S4_MAX_RANK
            )));
        }
        Ok(cfg)
    }

    /// Flag, then config file, then the environment; `None` leaves rayon's default.
    pub fn thread_count(&self, flag: Option<usize>) -> Result<Option<usize>, CliError> {
        if let Some(t) = flag.or(self.threads) {
            return Ok(Some(t));
        }
        match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a count"))),
            Err(_) => Ok(None),
        }
    }
}
