//! Read-only data the engine does not compute: `Ext^1` dimensions, names of
//! the moduli spaces in each chamber, and curve/divisor intersection numbers.
//!
//! The embedded copy can be replaced by a file, picked in this order: an
//! explicit path, the `WALLKIT_FIXTURES` environment variable, the copy
//! compiled into the binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};

pub const ENV_VAR: &str = "WALLKIT_FIXTURES";
pub const EMBEDDED: &str = include_str!("../data/fixtures.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtFixture {
    pub pair: (String, String),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    pub ext1: u64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelLabels {
    pub v: ChernCharacter,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub ext1_table: Vec<ExtFixture>,
    pub model_labels: Vec<ModelLabels>,
    pub intersection_matrix: IntersectionMatrix,
    /// Chern characters of the objects named in `ext1_table`.
    #[serde(default)]
    pub classes: BTreeMap<String, ChernCharacter>,
}

/// Where a fixture set came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureSource {
    Path(PathBuf),
    Environment(PathBuf),
    Embedded,
}

impl Fixtures {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded fixtures are valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let fixtures: Self = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        fixtures.validate()?;
        Ok(fixtures)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Explicit path, then `WALLKIT_FIXTURES`, then the embedded copy.
    pub fn load(explicit: Option<&Path>) -> Result<(Self, FixtureSource)> {
        if let Some(path) = explicit {
            return Ok((Self::from_path(path)?, FixtureSource::Path(path.to_path_buf())));
        }
        match std::env::var_os(ENV_VAR) {
            Some(path) if !path.is_empty() => {
                let path = PathBuf::from(path);
                Ok((Self::from_path(&path)?, FixtureSource::Environment(path)))
            }
            _ => Ok((Self::embedded(), FixtureSource::Embedded)),
        }
    }

    fn validate(&self) -> Result<()> {
        let m = &self.intersection_matrix;
        if m.entries.iter().flatten().any(|&x| x < 0) {
            return Err(Error::Fixture("intersection numbers must be nonnegative".into()));
        }
        if m.entries.len() != m.rows.len() || m.entries.iter().any(|row| row.len() != m.columns.len()) {
            return Err(Error::Fixture("intersection matrix shape does not match its labels".into()));
        }
        Ok(())
    }

    /// `ext^1(a, b)`, matching `condition` exactly (`None` for unconditional rows).
    pub fn ext1(&self, a: &str, b: &str, condition: Option<&str>) -> Option<u64> {
        self.ext1_table
            .iter()
            .find(|f| f.pair.0 == a && f.pair.1 == b && f.condition.as_deref() == condition)
            .map(|f| f.ext1)
    }

    pub fn model_labels_for(&self, v: &ChernCharacter) -> Option<&[String]> {
        self.model_labels.iter().find(|m| &m.v == v).map(|m| m.labels.as_slice())
    }
}
