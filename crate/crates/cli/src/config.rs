use std::path::Path;

use g2degen::{MonomialOrder, PrimeField, DEFAULT_PRIME, DEFAULT_SECOND_PRIME};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("invalid config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0} is not a usable prime")]
    BadPrime(u32),
    #[error("the two primes must differ")]
    SamePrimes,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrderName {
    Grevlex,
    Lex,
}

impl From<OrderName> for MonomialOrder {
    fn from(o: OrderName) -> Self {
        match o {
            OrderName::Grevlex => MonomialOrder::Grevlex,
            OrderName::Lex => MonomialOrder::Lex,
        }
    }
}

/// Run settings. Precedence: command-line flags, then the config file, then defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub prime: u32,
    pub second_prime: u32,
    pub seed: u64,
    pub order: OrderName,
    /// Per-task budget in seconds.
    pub timeout: u64,
    /// Budget for the whole run in seconds.
    pub global_timeout: u64,
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            prime: DEFAULT_PRIME,
            second_prime: DEFAULT_SECOND_PRIME,
            seed: 0,
            order: OrderName::Grevlex,
            timeout: 30 * 60,
            global_timeout: 2 * 60 * 60,
            jobs: 1,
        }
    }
}

/// Optional overrides, as read from a TOML file or the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub prime: Option<u32>,
    pub second_prime: Option<u32>,
    pub seed: Option<u64>,
    pub order: Option<OrderName>,
    pub timeout: Option<u64>,
    pub global_timeout: Option<u64>,
    pub jobs: Option<usize>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Ok(toml::from_str(&text)?)
    }

    fn apply(&self, c: &mut Config) {
        if let Some(v) = self.prime {
            c.prime = v;
        }
        if let Some(v) = self.second_prime {
            c.second_prime = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.order {
            c.order = v;
        }
        if let Some(v) = self.timeout {
            c.timeout = v;
        }
        if let Some(v) = self.global_timeout {
            c.global_timeout = v;
        }
        if let Some(v) = self.jobs {
            c.jobs = v;
        }
    }
}

impl Config {
    /// Defaults, then `file`, then `flags`.
    pub fn resolve(file: Option<&Overrides>, flags: &Overrides) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        if let Some(f) = file {
            f.apply(&mut c);
        }
        flags.apply(&mut c);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for p in [self.prime, self.second_prime] {
            PrimeField::new(p).map_err(|_| ConfigError::BadPrime(p))?;
        }
        if self.prime == self.second_prime {
            return Err(ConfigError::SamePrimes);
        }
        if self.timeout == 0 {
            return Err(ConfigError::NonPositive("timeout"));
        }
        if self.global_timeout == 0 {
            return Err(ConfigError::NonPositive("global timeout"));
        }
        if self.jobs == 0 {
            return Err(ConfigError::NonPositive("jobs"));
        }
        Ok(())
    }

    /// Seed for one task: the first eight bytes of `SHA-256(seed ":" task ":" k)`.
    pub fn task_seed(&self, task: &str, k: u64) -> u64 {
        let digest = Sha256::digest(format!("{}:{}:{}", self.seed, task, k).as_bytes());
        u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = Overrides {
            prime: Some(101),
            seed: Some(4),
            ..Default::default()
        };
        let flags = Overrides {
            seed: Some(9),
            ..Default::default()
        };
        let c = Config::resolve(Some(&file), &flags).unwrap();
        assert_eq!((c.prime, c.seed, c.second_prime), (101, 9, DEFAULT_SECOND_PRIME));
        assert_eq!(Config::resolve(None, &Overrides::default()).unwrap(), Config::default());
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |o: Overrides| Config::resolve(None, &o).is_err();
        assert!(bad(Overrides { prime: Some(100), ..Default::default() }));
        assert!(bad(Overrides { prime: Some(DEFAULT_SECOND_PRIME), ..Default::default() }));
        assert!(bad(Overrides { jobs: Some(0), ..Default::default() }));
        assert!(toml::from_str::<Overrides>("colour = 3").is_err());
        let o: Overrides = toml::from_str("order = \"lex\"\nprime = 7").unwrap();
        assert_eq!(o.order, Some(OrderName::Lex));
    }

    #[test]
    fn task_seeds_are_stable_and_distinct() {
        let c = Config::default();
        assert_eq!(c.task_seed("nodes-ghat", 0), c.task_seed("nodes-ghat", 0));
        assert_ne!(c.task_seed("nodes-ghat", 0), c.task_seed("nodes-ghat", 1));
        assert_ne!(c.task_seed("nodes-ghat", 0), c.task_seed("singular-plane", 0));
    }
}
