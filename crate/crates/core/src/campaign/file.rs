//! TOML campaign description.
//!
//! ```toml
//! instance = "torus:4x4:1"      # Gset path (relative to this file) or torus recipe
//! num_trials = 100
//! master_seed = 2025
//! sweep_scan = [10, 30, 100]    # optional
//!
//! [solver]
//! kind = "sa"
//! sweeps = 50
//!
//! [[targets]]
//! label = "optimum"
//! cut = 24
//!
//! [[targets]]
//! quality = 0.999               # fraction of best_known (or the registry entry)
//! ```

use std::path::Path;

use serde::Deserialize;

use super::{CampaignConfig, CampaignError};
use crate::instance::InstanceSource;
use crate::metrics::TargetSpec;
use crate::solver::SolverConfig;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetDef {
    pub label: Option<String>,
    pub cut: Option<f64>,
    pub quality: Option<f64>,
    pub confidence: Option<f64>,
}

impl TargetDef {
    pub fn resolve(&self, best_known: Option<i64>, default_confidence: f64) -> Result<TargetSpec, CampaignError> {
        let confidence = self.confidence.unwrap_or(default_confidence);
        let mut spec = match (self.cut, self.quality) {
            (Some(cut), None) => TargetSpec::new(format!("cut>={cut}"), cut, confidence)?,
            (None, Some(q)) => {
                let best = best_known.ok_or_else(|| {
                    CampaignError::Config("quality target needs best_known (config or registry)".into())
                })?;
                TargetSpec::from_quality(q, best, confidence)?
            }
            _ => {
                return Err(CampaignError::Config(
                    "each target needs exactly one of `cut` or `quality`".into(),
                ))
            }
        };
        if let Some(label) = &self.label {
            spec.label = label.clone();
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignFile {
    pub instance: String,
    /// Overrides the instance name used in records.
    pub name: Option<String>,
    pub best_known: Option<i64>,
    pub num_trials: u64,
    pub master_seed: u64,
    pub workers: Option<usize>,
    pub sweep_scan: Option<Vec<u64>>,
    pub solver: SolverConfig,
    #[serde(default)]
    pub targets: Vec<TargetDef>,
}

impl CampaignFile {
    pub fn parse(text: &str) -> Result<Self, CampaignError> {
        toml::from_str(text).map_err(|e| CampaignError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CampaignError> {
        let text = std::fs::read_to_string(path).map_err(|e| CampaignError::io(path, e))?;
        Self::parse(&text)
    }

    /// Instance source, with relative file paths resolved against `base_dir`.
    pub fn source(&self, base_dir: &Path) -> Result<InstanceSource, CampaignError> {
        Ok(match InstanceSource::parse(&self.instance)? {
            InstanceSource::File(p) if p.is_relative() => InstanceSource::File(base_dir.join(p)),
            other => other,
        })
    }

    pub fn to_config(
        &self,
        instance_name: &str,
        registry_best: Option<i64>,
        default_confidence: f64,
    ) -> Result<CampaignConfig, CampaignError> {
        let best = self.best_known.or(registry_best);
        let targets = self
            .targets
            .iter()
            .map(|t| t.resolve(best, default_confidence))
            .collect::<Result<_, _>>()?;
        let config = CampaignConfig {
            instance_name: self.name.clone().unwrap_or_else(|| instance_name.to_string()),
            solver: self.solver,
            num_trials: self.num_trials,
            master_seed: self.master_seed,
            targets,
            sweep_scan: self.sweep_scan.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::TorusSpec;
    use crate::solver::SolverKind;

    const SAMPLE: &str = r#"
instance = "torus:4x4:1"
num_trials = 100
master_seed = 2025
sweep_scan = [10, 30]

[solver]
kind = "sa"
sweeps = 50

[[targets]]
label = "optimum"
cut = 24

[[targets]]
quality = 0.999
confidence = 0.9
"#;

    #[test]
    fn parse_sample() {
        let f = CampaignFile::parse(SAMPLE).unwrap();
        assert_eq!(
            f.source(Path::new("/x")).unwrap(),
            InstanceSource::Torus(TorusSpec { rows: 4, cols: 4, seed: 1 })
        );
        assert_eq!(f.solver.kind, SolverKind::SimulatedAnnealing);
        assert_eq!((f.solver.temp_start, f.solver.temp_end), (3.0, 0.05));
        let cfg = f.to_config("torus-4x4-s1", Some(26), 0.99).unwrap();
        assert_eq!(cfg.targets[0], TargetSpec::new("optimum", 24.0, 0.99).unwrap());
        assert_eq!(cfg.targets[1].label, "99.9%");
        assert_eq!(cfg.targets[1].confidence, 0.9);
        assert!((cfg.targets[1].target_cut - 25.974).abs() < 1e-9);
        assert_eq!(cfg.sweep_scan, Some(vec![10, 30]));
    }

    #[test]
    fn quality_without_best_known() {
        let f = CampaignFile::parse(SAMPLE).unwrap();
        assert!(matches!(f.to_config("x", None, 0.99), Err(CampaignError::Config(_))));
    }

    #[test]
    fn relative_paths_resolve_against_config_dir() {
        let f = CampaignFile::parse(&SAMPLE.replace("torus:4x4:1", "G81.txt")).unwrap();
        assert_eq!(
            f.source(Path::new("/data")).unwrap(),
            InstanceSource::File("/data/G81.txt".into())
        );
    }

    #[test]
    fn rejects_unknown_fields_and_ambiguous_targets() {
        assert!(CampaignFile::parse(&format!("{SAMPLE}\nbogus = 1\n")).is_err());
        let both = SAMPLE.replace("cut = 24", "cut = 24\nquality = 1.0");
        let f = CampaignFile::parse(&both).unwrap();
        assert!(f.to_config("x", Some(26), 0.99).is_err());
    }
}
