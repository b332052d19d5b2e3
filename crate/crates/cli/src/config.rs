use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_CONFIG_PATH: &str = "apolar.toml";
pub const DEFAULT_SEED: u64 = 0x5eed_2011;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest number of variables accepted in a form.
    pub max_vars: usize,
    pub max_degree: u32,
    /// Seed for randomized sweeps when `--seed` is not given.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_vars: apolar::forms::MAX_VARS, max_degree: 40, seed: DEFAULT_SEED }
    }
}

impl Config {
    /// An explicit path must exist; the conventional path is optional.
    pub fn load(explicit: Option<&Path>) -> CliResult<Config> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let p = PathBuf::from(DEFAULT_CONFIG_PATH);
                if !p.exists() {
                    return Ok(Config::default());
                }
                p
            }
        };
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        Self::parse(&text).map_err(|message| CliError::Config { path, message })
    }

    pub fn parse(text: &str) -> Result<Config, String> {
        let config: Config = toml::from_str(text).map_err(|e| e.to_string())?;
        if config.max_vars == 0 || config.max_vars > apolar::forms::MAX_VARS {
            return Err(format!("max_vars must be in 1..={}", apolar::forms::MAX_VARS));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_files() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        let c = Config::parse("seed = 7\nmax_degree = 12").unwrap();
        assert_eq!((c.seed, c.max_degree, c.max_vars), (7, 12, 10));
        assert!(Config::parse("colour = 1").is_err());
        assert!(Config::parse("max_vars = 11").is_err());
    }

    #[test]
    fn explicit_path_must_exist() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("none.toml");
        assert!(matches!(Config::load(Some(&missing)), Err(CliError::Io { .. })));
        let file = dir.path().join("apolar.toml");
        std::fs::write(&file, "seed = 3").unwrap();
        assert_eq!(Config::load(Some(&file)).unwrap().seed, 3);
    }
}
