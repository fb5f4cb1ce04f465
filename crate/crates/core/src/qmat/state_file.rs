//! JSON state files.
//!
//! Exactly one of two keys:
//!
//! ```json
//! {"matrix": [[[re, im], [re, im], [re, im], [re, im]], ...4 rows]}
//! {"bloch": {"u": [u1, u2, u3], "v": [v1, v2, v3], "T": [[..3], [..3], [..3]]}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::basis::C64;
use super::bloch::BlochForm;
use super::density::DensityMatrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[[f64; 2]; 4]; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bloch: Option<BlochForm>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let e = rho.entries();
        Self {
            matrix: Some(e.map(|row| row.map(|z| [z.re, z.im]))),
            bloch: None,
        }
    }

    pub fn from_bloch(b: BlochForm) -> Self {
        Self {
            matrix: None,
            bloch: Some(b),
        }
    }

    /// Parses the JSON text; structural problems are `Error::StateFile`.
    pub fn parse(text: &str) -> Result<Self> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
        match (&file.matrix, &file.bloch) {
            (Some(_), Some(_)) => Err(Error::StateFile(
                "both \"matrix\" and \"bloch\" given".into(),
            )),
            (None, None) => Err(Error::StateFile(
                "one of \"matrix\" or \"bloch\" is required".into(),
            )),
            _ => Ok(file),
        }
    }

    /// Validates the content as a density matrix.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        match (&self.matrix, &self.bloch) {
            (Some(m), None) => {
                DensityMatrix::from_entries(m.map(|row| row.map(|[re, im]| C64::new(re, im))))
            }
            (None, Some(b)) => {
                if !b.is_finite() {
                    return Err(Error::NonFinite);
                }
                b.to_density()
            }
            _ => Err(Error::StateFile(
                "exactly one of \"matrix\" or \"bloch\" is required".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path)?;
    StateFile::parse(&text)?.to_density()
}
