//! Multi-trial campaigns, their summaries, and sweep-length scans.
//!
//! Trial `i` of a campaign runs with seed [`trial_seed`]`(master_seed, i)`,
//! so trials are independent of each other and of the worker that runs
//! them. Summaries are computed from records sorted by trial index and do
//! not depend on execution order.

mod file;
mod record;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::instance::{InstanceError, ProblemInstance};
use crate::metrics::{self, CampaignStats, MetricsError, TargetMetrics, TargetSpec};
use crate::rng::trial_seed;
use crate::solver::{run_trial, SolverConfig, SolverError, TrialResult};

pub use file::{CampaignFile, TargetDef};
pub use record::{parse_log, read_log, LogWriter, TrialRecord};

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid campaign: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("log does not belong to this campaign: {0}")]
    ConflictingLog(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl CampaignError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub instance_name: String,
    /// Solver template; its seed is replaced per trial.
    pub solver: SolverConfig,
    pub num_trials: u64,
    pub master_seed: u64,
    pub targets: Vec<TargetSpec>,
    /// Trial lengths for a sweep scan, strictly increasing.
    pub sweep_scan: Option<Vec<u64>>,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.num_trials == 0 {
            return Err(CampaignError::Invalid("num_trials must be at least 1".into()));
        }
        if self.instance_name.chars().any(char::is_whitespace) || self.instance_name.is_empty() {
            return Err(CampaignError::Invalid(format!(
                "instance name {:?} must be nonempty without whitespace",
                self.instance_name
            )));
        }
        self.solver.validate()?;
        if let Some(scan) = &self.sweep_scan {
            if scan.contains(&0) || scan.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CampaignError::Invalid(
                    "sweep_scan entries must be positive and strictly increasing".into(),
                ));
            }
        }
        for t in &self.targets {
            if !(t.confidence > 0.0 && t.confidence < 1.0) {
                return Err(MetricsError::ConfidenceDomain(t.confidence).into());
            }
        }
        Ok(())
    }

    /// Solver config for trial `index`.
    pub fn trial_config(&self, index: u64) -> SolverConfig {
        self.solver.with_seed(trial_seed(self.master_seed, index))
    }
}

/// Success statistics against one target.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSummary {
    pub target: TargetSpec,
    pub successes: u64,
    pub metrics: TargetMetrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSummary {
    pub instance: String,
    pub num_trials: u64,
    pub sweeps_per_trial: u64,
    pub highest_cut: i64,
    pub average_cut: f64,
    pub min_cut: i64,
    pub cut_histogram: BTreeMap<i64, u64>,
    pub avg_trial_time_s: f64,
    pub targets: Vec<TargetSummary>,
}

impl CampaignSummary {
    /// Equality with timing-derived fields (trial time, TTT) excluded.
    pub fn eq_ignoring_timing(&self, other: &Self) -> bool {
        let strip = |s: &Self| {
            let mut s = s.clone();
            s.avg_trial_time_s = 0.0;
            for t in &mut s.targets {
                t.metrics.ttt_s = None;
            }
            s
        };
        strip(self) == strip(other)
    }

    /// Best, average and worst cut as quality fractions of `best_known`.
    pub fn quality_range(&self, best_known: i64) -> Result<(f64, f64, f64), crate::eval::EvalError> {
        Ok((
            crate::eval::solution_quality(self.min_cut, best_known)?,
            self.average_cut / best_known as f64,
            crate::eval::solution_quality(self.highest_cut, best_known)?,
        ))
    }

    /// One CSV row per target (or one row without target columns).
    pub fn rows(&self) -> Vec<SummaryRow> {
        let base = SummaryRow {
            instance: self.instance.clone(),
            sweeps: self.sweeps_per_trial,
            trials: self.num_trials,
            highest_cut: self.highest_cut,
            average_cut: self.average_cut,
            min_cut: self.min_cut,
            avg_trial_time_s: self.avg_trial_time_s,
            target: None,
            target_cut: None,
            confidence: None,
            successes: None,
            p_s: None,
            r: None,
            stt: None,
            ttt_s: None,
            hw_ttt_s: None,
        };
        if self.targets.is_empty() {
            return vec![base];
        }
        self.targets
            .iter()
            .map(|t| SummaryRow {
                target: Some(t.target.label.clone()),
                target_cut: Some(t.target.target_cut),
                confidence: Some(t.target.confidence),
                successes: Some(t.successes),
                p_s: Some(t.metrics.p_s),
                r: t.metrics.repetitions,
                stt: t.metrics.stt,
                ttt_s: t.metrics.ttt_s,
                hw_ttt_s: t.metrics.hw_ttt_s,
                ..base.clone()
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        summary_csv(std::slice::from_ref(self))
    }

    /// `key=value` rendering, one line for the aggregate and one per target.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance={} trials={} sweeps={} highest_cut={} average_cut={} min_cut={} avg_trial_time_s={}",
            self.instance,
            self.num_trials,
            self.sweeps_per_trial,
            self.highest_cut,
            self.average_cut,
            self.min_cut,
            self.avg_trial_time_s
        );
        for t in &self.targets {
            let opt = |v: Option<f64>| v.map_or_else(|| "unreachable".to_string(), |x| x.to_string());
            let _ = writeln!(
                out,
                "target={} target_cut={} confidence={} successes={} p_s={} r={} stt={} ttt_s={} hw_ttt_s={}",
                t.target.label,
                t.target.target_cut,
                t.target.confidence,
                t.successes,
                t.metrics.p_s,
                opt(t.metrics.repetitions),
                opt(t.metrics.stt),
                opt(t.metrics.ttt_s),
                opt(t.metrics.hw_ttt_s),
            );
        }
        out
    }

    /// `cut,count` lines in increasing cut order.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("cut,count\n");
        for (cut, count) in &self.cut_histogram {
            let _ = writeln!(out, "{cut},{count}");
        }
        out
    }
}

/// Flat CSV row: campaign aggregate plus one target's statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub instance: String,
    pub sweeps: u64,
    pub trials: u64,
    pub highest_cut: i64,
    pub average_cut: f64,
    pub min_cut: i64,
    pub avg_trial_time_s: f64,
    pub target: Option<String>,
    pub target_cut: Option<f64>,
    pub confidence: Option<f64>,
    pub successes: Option<u64>,
    pub p_s: Option<f64>,
    pub r: Option<f64>,
    pub stt: Option<f64>,
    pub ttt_s: Option<f64>,
    pub hw_ttt_s: Option<f64>,
}

/// CSV for several summaries (e.g. every rung of a sweep scan).
pub fn summary_csv(summaries: &[CampaignSummary]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in summaries {
        for row in s.rows() {
            w.serialize(row).expect("in-memory CSV write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

/// Aggregates trial records against targets.
///
/// All records must share one instance and one sweep budget.
pub fn summarize(
    records: &[TrialRecord],
    targets: &[TargetSpec],
    sweep_time_s: f64,
) -> Result<CampaignSummary, CampaignError> {
    let first = records
        .first()
        .ok_or_else(|| CampaignError::Invalid("no trial records to summarize".into()))?;
    if let Some(other) = records
        .iter()
        .find(|r| r.instance != first.instance || r.solver.sweeps != first.solver.sweeps)
    {
        return Err(CampaignError::Invalid(format!(
            "mixed records: {}/{} sweeps vs {}/{} sweeps",
            first.instance, first.solver.sweeps, other.instance, other.solver.sweeps
        )));
    }
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.trial);

    let trials = sorted.len() as u64;
    let mut histogram = BTreeMap::new();
    for r in &sorted {
        *histogram.entry(r.best_cut).or_insert(0) += 1;
    }
    let total: i128 = sorted.iter().map(|r| i128::from(r.best_cut)).sum();
    let avg_time = sorted.iter().map(|r| r.wall_time_s).sum::<f64>() / trials as f64;

    let targets = targets
        .iter()
        .map(|t| {
            let successes = sorted.iter().filter(|r| t.is_met(r.best_cut)).count() as u64;
            let stats = CampaignStats::new(trials, successes, first.solver.sweeps, avg_time)?;
            Ok(TargetSummary {
                target: t.clone(),
                successes,
                metrics: TargetMetrics::compute(&stats, t.confidence, sweep_time_s)?,
            })
        })
        .collect::<Result<Vec<_>, MetricsError>>()?;

    Ok(CampaignSummary {
        instance: first.instance.clone(),
        num_trials: trials,
        sweeps_per_trial: first.solver.sweeps,
        highest_cut: *histogram.keys().next_back().unwrap(),
        average_cut: total as f64 / trials as f64,
        min_cut: *histogram.keys().next().unwrap(),
        cut_histogram: histogram,
        avg_trial_time_s: avg_time,
        targets,
    })
}

/// [`summarize`] over in-memory trial results.
pub fn summarize_results(
    instance: &str,
    solver: &SolverConfig,
    results: &[TrialResult],
    targets: &[TargetSpec],
    sweep_time_s: f64,
) -> Result<CampaignSummary, CampaignError> {
    let records: Vec<TrialRecord> = results
        .iter()
        .enumerate()
        .map(|(i, r)| TrialRecord::from_result(i as u64, instance, &solver.with_seed(r.seed), r, false))
        .collect();
    summarize(&records, targets, sweep_time_s)
}

/// Campaign result: the summary and the records it was computed from,
/// sorted by trial index.
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub summary: CampaignSummary,
    pub records: Vec<TrialRecord>,
}

/// One rung of a sweep-length scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub sweeps: u64,
    pub highest_cut: i64,
    pub average_cut: f64,
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

/// Campaign runner with execution options.
pub struct Campaign<'a> {
    instance: &'a ProblemInstance,
    config: &'a CampaignConfig,
    workers: usize,
    keep_spins: bool,
    sweep_time_s: f64,
    log: Option<PathBuf>,
}

impl<'a> Campaign<'a> {
    pub fn new(instance: &'a ProblemInstance, config: &'a CampaignConfig) -> Self {
        Self {
            instance,
            config,
            workers: 1,
            keep_spins: false,
            sweep_time_s: metrics::DEFAULT_SWEEP_TIME_S,
            log: None,
        }
    }

    /// Number of concurrent trials (at least 1).
    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    /// Store each trial's best configuration as hex in the log.
    pub fn keep_spins(mut self, keep: bool) -> Self {
        self.keep_spins = keep;
        self
    }

    pub fn sweep_time(mut self, seconds: f64) -> Self {
        self.sweep_time_s = seconds;
        self
    }

    /// Append records to `path`. Records already in the file for the same
    /// campaign are reused instead of re-run, so an interrupted campaign
    /// resumes where it stopped.
    pub fn log_to(mut self, path: impl Into<PathBuf>) -> Self {
        self.log = Some(path.into());
        self
    }

    pub fn run(&self) -> Result<CampaignOutcome, CampaignError> {
        self.config.validate()?;
        self.run_with(self.config.solver.sweeps)
    }

    /// One full campaign per entry of `sweep_scan`, reusing the master seed
    /// so trial `i` starts from the same random state on every rung.
    pub fn sweep_scan(&self) -> Result<Vec<(ScanRow, CampaignSummary)>, CampaignError> {
        self.config.validate()?;
        let ladder = match &self.config.sweep_scan {
            Some(l) if !l.is_empty() => l.clone(),
            _ => return Err(CampaignError::Invalid("sweep scan needs a nonempty ladder".into())),
        };
        ladder
            .into_iter()
            .map(|sweeps| {
                let outcome = self.run_with(sweeps)?;
                let s = outcome.summary;
                Ok((
                    ScanRow {
                        sweeps,
                        highest_cut: s.highest_cut,
                        average_cut: s.average_cut,
                    },
                    s,
                ))
            })
            .collect()
    }

    fn run_with(&self, sweeps: u64) -> Result<CampaignOutcome, CampaignError> {
        if self.instance.name() != self.config.instance_name {
            return Err(CampaignError::Invalid(format!(
                "config names instance {:?} but {:?} was supplied",
                self.config.instance_name,
                self.instance.name()
            )));
        }
        let solver = self.config.solver.with_sweeps(sweeps);
        let mut done: HashMap<u64, TrialRecord> = HashMap::new();
        let mut writer = None;
        if let Some(path) = &self.log {
            if path.exists() {
                for r in read_log(path)? {
                    if r.solver.sweeps != sweeps {
                        continue;
                    }
                    self.check_resumable(&r, &solver)?;
                    if r.trial < self.config.num_trials {
                        done.entry(r.trial).or_insert(r);
                    }
                }
            }
            let mut w = LogWriter::append(path)?;
            if done.is_empty() {
                w.comment(&format!(
                    "campaign instance={} master_seed={} trials={} kind={} sweeps={}",
                    self.config.instance_name, self.config.master_seed, self.config.num_trials, solver.kind, sweeps
                ))?;
            }
            writer = Some(Mutex::new(w));
        }

        let pending: Vec<u64> = (0..self.config.num_trials).filter(|i| !done.contains_key(i)).collect();
        let run_one = |i: u64| -> Result<TrialRecord, CampaignError> {
            let cfg = solver.with_seed(trial_seed(self.config.master_seed, i));
            let result = run_trial(self.instance, &cfg)?;
            let record = TrialRecord::from_result(i, self.instance.name(), &cfg, &result, self.keep_spins);
            if let Some(w) = &writer {
                w.lock().expect("log writer poisoned").write(&record)?;
            }
            Ok(record)
        };
        let fresh: Vec<TrialRecord> = if self.workers == 1 {
            pending.into_iter().map(run_one).collect::<Result<_, _>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .map_err(|e| CampaignError::Invalid(format!("worker pool: {e}")))?;
            pool.install(|| pending.into_par_iter().map(run_one).collect::<Result<_, _>>())?
        };

        let mut records: Vec<TrialRecord> = done.into_values().chain(fresh).collect();
        records.sort_by_key(|r| r.trial);
        let summary = summarize(&records, &self.config.targets, self.sweep_time_s)?;
        Ok(CampaignOutcome { summary, records })
    }

    fn check_resumable(&self, r: &TrialRecord, solver: &SolverConfig) -> Result<(), CampaignError> {
        let expected_seed = trial_seed(self.config.master_seed, r.trial);
        let same = r.instance == self.config.instance_name
            && r.solver.kind == solver.kind
            && r.solver.seed == expected_seed
            && (r.solver.kind != crate::solver::SolverKind::SimulatedAnnealing
                || (r.solver.temp_start == solver.temp_start && r.solver.temp_end == solver.temp_end));
        if same {
            Ok(())
        } else {
            Err(CampaignError::ConflictingLog(format!("trial {} record: {r}", r.trial)))
        }
    }
}

/// Serial campaign without a log.
pub fn run_campaign(instance: &ProblemInstance, config: &CampaignConfig) -> Result<CampaignSummary, CampaignError> {
    Ok(Campaign::new(instance, config).run()?.summary)
}

/// Serial sweep scan without a log.
pub fn sweep_scan(instance: &ProblemInstance, config: &CampaignConfig) -> Result<Vec<ScanRow>, CampaignError> {
    Ok(Campaign::new(instance, config)
        .sweep_scan()?
        .into_iter()
        .map(|(row, _)| row)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_torus, TorusSpec};
    use crate::solver::{default_config, SolverKind};

    fn record(trial: u64, cut: i64) -> TrialRecord {
        TrialRecord {
            trial,
            instance: "x".into(),
            solver: default_config(SolverKind::GreedyLocalSearch, 10, trial),
            best_cut: cut,
            sweeps_executed: 3,
            wall_time_s: 0.5,
            spins: None,
        }
    }

    fn torus_config(name: String, trials: u64) -> CampaignConfig {
        CampaignConfig {
            instance_name: name,
            solver: default_config(SolverKind::SimulatedAnnealing, 20, 0),
            num_trials: trials,
            master_seed: 9,
            targets: vec![TargetSpec::new("t", 10.0, 0.99).unwrap()],
            sweep_scan: None,
        }
    }

    #[test]
    fn summarize_small() {
        let recs = vec![record(0, 5), record(1, 5), record(2, 7)];
        let s = summarize(&recs, &[TargetSpec::new("six", 6.0, 0.99).unwrap()], 2e-9).unwrap();
        assert_eq!(s.targets[0].successes, 1);
        assert!((s.targets[0].metrics.p_s - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!((s.min_cut, s.highest_cut), (5, 7));
        assert!((s.average_cut - 17.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.cut_histogram, BTreeMap::from([(5, 2), (7, 1)]));
        assert_eq!(s.avg_trial_time_s, 0.5);
    }

    #[test]
    fn summarize_published_success_rate() {
        let recs: Vec<_> = (0..100).map(|i| {
            let mut r = record(i, if i < 86 { 14_050 } else { 14_040 });
            r.solver.sweeps = 100_000;
            r
        }).collect();
        let t = TargetSpec::from_quality(0.999, 14_060, 0.99).unwrap();
        let s = summarize(&recs, &[t], 2e-9).unwrap();
        assert_eq!(s.targets[0].successes, 86);
        let stt = s.targets[0].metrics.stt.unwrap();
        assert!((stt - 234_000.0).abs() / 234_000.0 < 0.01);
    }

    #[test]
    fn summarize_rejects_empty_and_mixed() {
        assert!(summarize(&[], &[], 2e-9).is_err());
        let mut other = record(1, 4);
        other.solver.sweeps = 11;
        assert!(summarize(&[record(0, 4), other], &[], 2e-9).is_err());
    }

    #[test]
    fn single_trial_extremes_coincide() {
        let g = generate_torus(&TorusSpec::new(4, 4, 1).unwrap()).unwrap();
        let cfg = torus_config(g.name().to_string(), 1);
        let s = run_campaign(&g, &cfg).unwrap();
        assert_eq!(s.highest_cut, s.min_cut);
        assert_eq!(s.average_cut, s.highest_cut as f64);
    }

    #[test]
    fn config_validation() {
        let g = generate_torus(&TorusSpec::new(4, 4, 1).unwrap()).unwrap();
        let mut cfg = torus_config(g.name().to_string(), 0);
        assert!(cfg.validate().is_err());
        cfg.num_trials = 3;
        cfg.sweep_scan = Some(vec![10, 10]);
        assert!(cfg.validate().is_err());
        cfg.sweep_scan = Some(vec![]);
        assert!(sweep_scan(&g, &cfg).is_err());
        cfg.sweep_scan = None;
        assert!(sweep_scan(&g, &cfg).is_err());
        cfg.instance_name = "other".into();
        assert!(run_campaign(&g, &cfg).is_err());
    }

    #[test]
    fn deterministic_summary() {
        let g = generate_torus(&TorusSpec::new(5, 5, 2).unwrap()).unwrap();
        let cfg = torus_config(g.name().to_string(), 12);
        let a = run_campaign(&g, &cfg).unwrap();
        let b = run_campaign(&g, &cfg).unwrap();
        assert!(a.eq_ignoring_timing(&b));
        let c = Campaign::new(&g, &cfg).workers(3).run().unwrap().summary;
        assert!(a.eq_ignoring_timing(&c));
    }

    #[test]
    fn resume_from_partial_log() {
        let dir = tempfile::tempdir().unwrap();
        let log = dir.path().join("c.log");
        let g = generate_torus(&TorusSpec::new(4, 5, 3).unwrap()).unwrap();
        let full = torus_config(g.name().to_string(), 10);
        let partial = CampaignConfig { num_trials: 4, ..full.clone() };
        Campaign::new(&g, &partial).log_to(&log).run().unwrap();
        let resumed = Campaign::new(&g, &full).log_to(&log).run().unwrap();
        let lines = read_log(&log).unwrap();
        assert_eq!(lines.len(), 10);
        let fresh = run_campaign(&g, &full).unwrap();
        assert!(resumed.summary.eq_ignoring_timing(&fresh));

        let other_seed = CampaignConfig { master_seed: 10, ..full };
        assert!(matches!(
            Campaign::new(&g, &other_seed).log_to(&log).run(),
            Err(CampaignError::ConflictingLog(_))
        ));
    }

    #[test]
    fn csv_and_kv_exports() {
        let recs = vec![record(0, 5), record(1, 7)];
        let s = summarize(&recs, &[TargetSpec::new("seven", 7.0, 0.99).unwrap(), TargetSpec::new("nine", 9.0, 0.99).unwrap()], 2e-9).unwrap();
        let csv = s.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "instance,sweeps,trials,highest_cut,average_cut,min_cut,avg_trial_time_s,target,target_cut,confidence,successes,p_s,r,stt,ttt_s,hw_ttt_s"
        );
        assert!(lines.next().unwrap().starts_with("x,10,2,7,6.0,5,0.5,seven,7.0,0.99,1,0.5,"));
        assert!(lines.next().unwrap().ends_with("nine,9.0,0.99,0,0.0,,,,"));
        assert!(s.to_kv().contains("target=nine target_cut=9 confidence=0.99 successes=0 p_s=0 r=unreachable"));
        assert_eq!(s.histogram_csv(), "cut,count\n5,1\n7,1\n");
        let (lo, _, hi) = s.quality_range(7).unwrap();
        assert_eq!(hi, 1.0);
        assert!((lo - 5.0 / 7.0).abs() < 1e-12);
    }
}
