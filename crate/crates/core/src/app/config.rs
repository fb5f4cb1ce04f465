use clap::ValueEnum;
use serde::Serialize;

use crate::criteria::DEFAULT_EPSILON;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// Settings shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub samples: usize,
    pub seed: u64,
    pub grid: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            samples: 2000,
            seed: 0,
            grid: 24,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(self) -> Result<Self> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1e-2) {
            return Err(Error::Domain {
                name: "epsilon",
                value: self.epsilon,
                domain: "(0, 1e-2]",
            });
        }
        if self.samples == 0 {
            return Err(Error::Domain {
                name: "samples",
                value: 0.0,
                domain: ">= 1",
            });
        }
        if self.grid == 0 {
            return Err(Error::Domain {
                name: "grid",
                value: 0.0,
                domain: ">= 1",
            });
        }
        Ok(self)
    }
}
