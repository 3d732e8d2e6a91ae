use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::DEFAULT_ENUMERATION_LIMIT;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Human,
    Structured,
}

/// Knobs shared by every analysis and sweep; echoed into each report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest group order walked element by element for cycle containment.
    pub enumeration_limit: u64,
    /// Longest sampled toggle word in the lemma suite.
    pub word_bound: usize,
    /// Random words drawn per lemma clause, on top of all words of length <= 2.
    pub word_samples: usize,
    pub seed: u64,
    pub output_mode: OutputMode,
    /// Worker threads for sweeps; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            word_bound: 8,
            word_samples: 64,
            seed: 42,
            output_mode: OutputMode::Human,
            jobs: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.enumeration_limit == 0 {
            return Err(Error::InvalidConfig(
                "enumeration limit must be positive".into(),
            ));
        }
        if self.word_bound == 0 {
            return Err(Error::InvalidConfig("word bound must be positive".into()));
        }
        if self.word_samples == 0 {
            return Err(Error::InvalidConfig("word samples must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.enumeration_limit, 1_000_000);
        assert_eq!(c.word_bound, 8);
    }

    #[test]
    fn zero_limits_are_rejected() {
        let c = RunConfig {
            word_bound: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        let c = RunConfig {
            enumeration_limit: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
