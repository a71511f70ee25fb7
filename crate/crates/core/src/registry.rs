//! Known instances: expected sizes, best-known cuts and historic results.
//!
//! The registry ships embedded. A user file (TOML, same schema) can add or
//! replace entries; [`Registry::from_env`] reads one from the path in
//! `GSETKIT_REGISTRY` when that variable is set.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::instance::ProblemInstance;

/// Environment variable naming an extra registry file.
pub const REGISTRY_ENV: &str = "GSETKIT_REGISTRY";

const EMBEDDED: &str = include_str!("../data/registry.toml");

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{name}: historic cut {cut} ({label}) exceeds best-known cut {best}")]
    HistoricAboveBest { name: String, label: String, cut: i64, best: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HistoricCut {
    pub label: String,
    pub cut: i64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceTtt {
    pub target: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryEntry {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub best_known_cut: i64,
    pub best_known_energy: Option<i64>,
    pub sha256: Option<String>,
    #[serde(default)]
    pub historic_cuts: Vec<HistoricCut>,
    #[serde(default)]
    pub reference_ttt_s: Vec<ReferenceTtt>,
}

impl RegistryEntry {
    /// Published time-to-target of a reference solver for `target`.
    pub fn reference_ttt(&self, target: &str) -> Option<f64> {
        self.reference_ttt_s.iter().find(|r| r.target == target).map(|r| r.seconds)
    }

    /// Differences between this entry and a loaded instance (and optionally
    /// the raw file bytes). Empty means the instance matches.
    pub fn mismatches(&self, instance: &ProblemInstance, file_bytes: Option<&[u8]>) -> Vec<String> {
        let mut out = Vec::new();
        if instance.n() != self.n {
            out.push(format!("n: expected {}, got {}", self.n, instance.n()));
        }
        if instance.m() != self.m {
            out.push(format!("m: expected {}, got {}", self.m, instance.m()));
        }
        if let (Some(expected), Some(bytes)) = (&self.sha256, file_bytes) {
            let got = sha256_hex(bytes);
            if !got.eq_ignore_ascii_case(expected) {
                out.push(format!("sha256: expected {expected}, got {got}"));
            }
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Deserialize)]
struct RegistryFile {
    #[serde(default)]
    instance: Vec<RegistryEntry>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

impl Registry {
    pub fn embedded() -> Self {
        Self::from_toml(EMBEDDED).expect("embedded registry is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self, RegistryError> {
        let file: RegistryFile = toml::from_str(text).map_err(|e| RegistryError::Parse(e.to_string()))?;
        let registry = Self { entries: file.instance };
        registry.validate()?;
        Ok(registry)
    }

    pub fn load(path: &Path) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Embedded entries, extended by the file named in `GSETKIT_REGISTRY`.
    pub fn from_env() -> Result<Self, RegistryError> {
        let mut registry = Self::embedded();
        if let Some(path) = std::env::var_os(REGISTRY_ENV) {
            registry.merge(Self::load(Path::new(&path))?);
        }
        Ok(registry)
    }

    /// Adds entries from `other`, replacing same-named ones.
    pub fn merge(&mut self, other: Registry) {
        for entry in other.entries {
            match self.entries.iter_mut().find(|e| e.name == entry.name) {
                Some(slot) => *slot = entry,
                None => self.entries.push(entry),
            }
        }
    }

    pub fn validate(&self) -> Result<(), RegistryError> {
        for e in &self.entries {
            if let Some(h) = e.historic_cuts.iter().find(|h| h.cut > e.best_known_cut) {
                return Err(RegistryError::HistoricAboveBest {
                    name: e.name.clone(),
                    label: h.label.clone(),
                    cut: h.cut,
                    best: e.best_known_cut,
                });
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }
}
