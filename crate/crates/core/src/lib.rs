//! Benchmark, validation and campaign toolkit for sparse weighted Max-Cut /
//! Ising instances of the Gset family.
//!
//! * [`instance`]: Gset text I/O and seeded toroidal ±1 instances.
//! * [`codec`]: hexadecimal solution strings <-> spin configurations.
//! * [`eval`]: exact cut, Ising energy, single-flip deltas, solution quality.
//! * [`metrics`]: success probability, repetitions, sweeps- and time-to-target.
//! * [`solver`]: sweep-based heuristics (greedy descent, simulated annealing).
//! * [`oracle`]: exact Max-Cut by enumeration for n <= 24.
//! * [`campaign`]: seeded multi-trial campaigns, logs, summaries and scans.
//! * [`registry`]: best-known cuts and expected sizes of known instances.
//! * [`cli`]: the `gsetkit` command line.
//!
//! ```
//! use gsetkit::{codec, eval, instance};
//!
//! let g = instance::parse_gset("2 1\n1 2 1").unwrap();
//! let spins = codec::decode_hex("8", 2).unwrap(); // 10 -> (+1, -1)
//! assert_eq!(eval::cut_value(&g, &spins), Ok(1));
//! assert_eq!(eval::ising_energy(&g, &spins), Ok(-1));
//! ```

pub mod campaign;
pub mod cli;
pub mod codec;
pub mod eval;
pub mod instance;
pub mod metrics;
pub mod oracle;
pub mod registry;
pub mod rng;
pub mod solver;

pub use campaign::{Campaign, CampaignConfig, CampaignSummary, TrialRecord};
pub use codec::SpinConfiguration;
pub use eval::EvaluationReport;
pub use instance::{ProblemInstance, TorusSpec};
pub use metrics::TargetSpec;
pub use solver::{SolverConfig, SolverKind, TrialResult};

use thiserror::Error;

/// Any toolkit error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Instance(#[from] instance::InstanceError),
    #[error(transparent)]
    Codec(#[from] codec::CodecError),
    #[error(transparent)]
    Eval(#[from] eval::EvalError),
    #[error(transparent)]
    Metrics(#[from] metrics::MetricsError),
    #[error(transparent)]
    Solver(#[from] solver::SolverError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Campaign(#[from] campaign::CampaignError),
    #[error(transparent)]
    Registry(#[from] registry::RegistryError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Loads an instance from a Gset file or a `torus:RxC:SEED` recipe. File
/// instances are named after the file stem.
pub fn load_instance(source: &instance::InstanceSource) -> Result<ProblemInstance> {
    match source {
        instance::InstanceSource::Torus(spec) => Ok(instance::generate_torus(spec)?),
        instance::InstanceSource::File(path) => {
            let text = read_text(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().replace(char::is_whitespace, "_"))
                .unwrap_or_else(|| "unnamed".into());
            Ok(instance::parse_gset(&text)?.with_name(name))
        }
    }
}

pub(crate) fn read_text(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
