//! One-line-per-trial campaign log.
//!
//! Each line is a whitespace-separated list of `key=value` fields:
//!
//! ```text
//! trial=0 instance=torus-4x4-s1 kind=sa sweeps=50 seed=1234 temp_start=3 temp_end=0.05 best_cut=20 sweeps_executed=50 wall_time_s=0.000081
//! ```
//!
//! An optional `spins=<hex>` field carries the best configuration. Lines
//! starting with `#` and blank lines are ignored. Floats are written in
//! shortest round-trip form so a parsed log reproduces the live summary.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::CampaignError;
use crate::codec::{decode_hex, SpinConfiguration};
use crate::instance::ProblemInstance;
use crate::solver::{run_trial, SolverConfig, SolverKind, TrialResult};

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub instance: String,
    pub solver: SolverConfig,
    pub best_cut: i64,
    pub sweeps_executed: u64,
    pub wall_time_s: f64,
    pub spins: Option<String>,
}

impl TrialRecord {
    pub fn from_result(
        trial: u64,
        instance: &str,
        solver: &SolverConfig,
        result: &TrialResult,
        keep_spins: bool,
    ) -> Self {
        Self {
            trial,
            instance: instance.to_string(),
            solver: *solver,
            best_cut: result.best_cut,
            sweeps_executed: result.sweeps_executed,
            wall_time_s: result.wall_time_s,
            spins: keep_spins.then(|| result.best_spins.to_hex()),
        }
    }

    /// Re-runs the logged trial on `instance`.
    pub fn replay(&self, instance: &ProblemInstance) -> Result<TrialResult, CampaignError> {
        if instance.name() != self.instance {
            return Err(CampaignError::Invalid(format!(
                "record is for instance {:?}, got {:?}",
                self.instance,
                instance.name()
            )));
        }
        Ok(run_trial(instance, &self.solver)?)
    }

    pub fn best_spins(&self, n: usize) -> Option<Result<SpinConfiguration, CampaignError>> {
        self.spins
            .as_deref()
            .map(|hex| decode_hex(hex, n).map_err(|e| CampaignError::Invalid(e.to_string())))
    }
}

impl fmt::Display for TrialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial={} instance={} kind={} sweeps={} seed={} temp_start={} temp_end={} best_cut={} sweeps_executed={} wall_time_s={}",
            self.trial,
            self.instance,
            self.solver.kind,
            self.solver.sweeps,
            self.solver.seed,
            self.solver.temp_start,
            self.solver.temp_end,
            self.best_cut,
            self.sweeps_executed,
            self.wall_time_s,
        )?;
        if let Some(spins) = &self.spins {
            write!(f, " spins={spins}")?;
        }
        Ok(())
    }
}

impl FromStr for TrialRecord {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut fields = std::collections::HashMap::new();
        for token in line.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| format!("field {token:?} is not key=value"))?;
            if fields.insert(k, v).is_some() {
                return Err(format!("repeated field {k:?}"));
            }
        }
        fn get<'a>(fields: &std::collections::HashMap<&str, &'a str>, key: &str) -> Result<&'a str, String> {
            fields.get(key).copied().ok_or_else(|| format!("missing field {key:?}"))
        }
        fn num<T: FromStr>(fields: &std::collections::HashMap<&str, &str>, key: &str) -> Result<T, String> {
            let raw = get(fields, key)?;
            raw.parse().map_err(|_| format!("bad value for {key}: {raw:?}"))
        }
        let kind: SolverKind = get(&fields, "kind")?.parse().map_err(|e: crate::solver::SolverError| e.to_string())?;
        Ok(Self {
            trial: num(&fields, "trial")?,
            instance: get(&fields, "instance")?.to_string(),
            solver: SolverConfig {
                kind,
                sweeps: num(&fields, "sweeps")?,
                seed: num(&fields, "seed")?,
                temp_start: num(&fields, "temp_start")?,
                temp_end: num(&fields, "temp_end")?,
            },
            best_cut: num(&fields, "best_cut")?,
            sweeps_executed: num(&fields, "sweeps_executed")?,
            wall_time_s: num(&fields, "wall_time_s")?,
            spins: fields.get("spins").map(|s| s.to_string()),
        })
    }
}

/// Parses every record in a log, reporting the first bad line.
pub fn parse_log(text: &str) -> Result<Vec<TrialRecord>, CampaignError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            l.parse().map_err(|message| CampaignError::Log {
                line: i + 1,
                message,
            })
        })
        .collect()
}

pub fn read_log(path: &Path) -> Result<Vec<TrialRecord>, CampaignError> {
    let file = File::open(path).map_err(|e| CampaignError::io(path, e))?;
    let mut text = String::new();
    for line in BufReader::new(file).lines() {
        text.push_str(&line.map_err(|e| CampaignError::io(path, e))?);
        text.push('\n');
    }
    parse_log(&text)
}

/// Append-only log writer, flushed after every record.
pub struct LogWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl LogWriter {
    pub fn append(path: &Path) -> Result<Self, CampaignError> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CampaignError::io(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            out: BufWriter::new(file),
        })
    }

    pub fn comment(&mut self, text: &str) -> Result<(), CampaignError> {
        writeln!(self.out, "# {text}")
            .and_then(|_| self.out.flush())
            .map_err(|e| CampaignError::io(&self.path, e))
    }

    pub fn write(&mut self, record: &TrialRecord) -> Result<(), CampaignError> {
        writeln!(self.out, "{record}")
            .and_then(|_| self.out.flush())
            .map_err(|e| CampaignError::io(&self.path, e))
    }
}
