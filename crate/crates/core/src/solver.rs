//! Sweep-based heuristic solvers.
//!
//! A trial is a fixed budget of sweeps. One sweep visits every variable
//! exactly once in a fresh seeded random order and offers each a single
//! flip, evaluated incrementally from its adjacency. What to accept is the
//! only thing that differs between solvers; it is supplied by an
//! [`AcceptancePolicy`], so new solver kinds plug into the same harness.
//!
//! Randomness for a trial with seed `s` comes from two independent
//! [`SeededRng`] streams: stream 0 draws the initial spins (one
//! [`SeededRng::coin`] per variable, in order) and then one Fisher-Yates
//! shuffle of the visiting order per sweep; stream 1 supplies one uniform
//! per visit to policies that ask for it. Neither stream depends on the sweep
//! budget, so a longer trial replays a shorter one's random draws.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::SpinConfiguration;
use crate::eval::{cut_value, delta_at};
use crate::instance::ProblemInstance;
use crate::rng::SeededRng;

/// Default starting temperature for annealing.
pub const DEFAULT_TEMP_START: f64 = 3.0;
/// Default final temperature for annealing.
pub const DEFAULT_TEMP_END: f64 = 0.05;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("sweep budget must be at least 1")]
    NoSweeps,
    #[error("temperatures must satisfy 0 < end < start, got start={start} end={end}")]
    BadTemperatures { start: f64, end: f64 },
    #[error("instance has no vertices")]
    EmptyInstance,
    #[error("unknown solver kind {0:?} (expected greedy or sa)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolverKind {
    #[serde(rename = "greedy", alias = "greedy_local_search")]
    GreedyLocalSearch,
    #[serde(rename = "sa", alias = "simulated_annealing")]
    SimulatedAnnealing,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GreedyLocalSearch => "greedy",
            Self::SimulatedAnnealing => "sa",
        })
    }
}

impl FromStr for SolverKind {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" | "greedy_local_search" => Ok(Self::GreedyLocalSearch),
            "sa" | "simulated_annealing" => Ok(Self::SimulatedAnnealing),
            other => Err(SolverError::UnknownKind(other.to_string())),
        }
    }
}

/// Everything needed to replay a trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub kind: SolverKind,
    pub sweeps: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_temp_start")]
    pub temp_start: f64,
    #[serde(default = "default_temp_end")]
    pub temp_end: f64,
}

fn default_temp_start() -> f64 {
    DEFAULT_TEMP_START
}

fn default_temp_end() -> f64 {
    DEFAULT_TEMP_END
}

/// Config with the shipped annealing temperatures (3.0 down to 0.05).
pub fn default_config(kind: SolverKind, sweeps: u64, seed: u64) -> SolverConfig {
    SolverConfig {
        kind,
        sweeps,
        seed,
        temp_start: DEFAULT_TEMP_START,
        temp_end: DEFAULT_TEMP_END,
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.sweeps == 0 {
            return Err(SolverError::NoSweeps);
        }
        if self.kind == SolverKind::SimulatedAnnealing
            && !(self.temp_end > 0.0 && self.temp_end < self.temp_start && self.temp_start.is_finite())
        {
            return Err(SolverError::BadTemperatures {
                start: self.temp_start,
                end: self.temp_end,
            });
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_sweeps(self, sweeps: u64) -> Self {
        Self { sweeps, ..self }
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub best_cut: i64,
    pub best_spins: SpinConfiguration,
    pub sweeps_executed: u64,
    pub wall_time_s: f64,
    pub seed: u64,
}

impl TrialResult {
    /// Equality on everything except wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.best_cut == other.best_cut
            && self.best_spins == other.best_spins
            && self.sweeps_executed == other.sweeps_executed
            && self.seed == other.seed
    }
}

/// Flip acceptance rule driven by the sweep harness.
pub trait AcceptancePolicy {
    /// Called before sweep `index` (0-based) of a `budget`-sweep trial.
    fn begin_sweep(&mut self, _index: u64, _budget: u64) {}

    /// Whether to flip a variable whose flip changes the cut by `delta`.
    /// `uniform` is a fresh draw in `[0, 1)` when [`uses_uniform`] is true.
    ///
    /// [`uses_uniform`]: AcceptancePolicy::uses_uniform
    fn accept(&mut self, delta: i64, uniform: f64) -> bool;

    fn uses_uniform(&self) -> bool {
        false
    }

    /// Stop the trial after a sweep in which nothing was flipped.
    fn halts_when_stuck(&self) -> bool {
        false
    }
}

/// Accept strictly improving flips; stop at a local optimum.
#[derive(Debug, Default, Clone, Copy)]
pub struct Greedy;

impl AcceptancePolicy for Greedy {
    fn accept(&mut self, delta: i64, _uniform: f64) -> bool {
        delta > 0
    }

    fn halts_when_stuck(&self) -> bool {
        true
    }
}

/// Metropolis acceptance on the cut with a geometric temperature schedule.
///
/// Sweep `t` of `S` runs at `T = T0 * (T1 / T0)^(t / (S - 1))`; a one-sweep
/// trial runs at `T0`.
#[derive(Debug, Clone, Copy)]
pub struct Annealing {
    temp_start: f64,
    temp_end: f64,
    inv_temp: f64,
}

impl Annealing {
    pub fn new(temp_start: f64, temp_end: f64) -> Self {
        Self {
            temp_start,
            temp_end,
            inv_temp: 1.0 / temp_start,
        }
    }

    pub fn temperature(&self, index: u64, budget: u64) -> f64 {
        if budget <= 1 {
            return self.temp_start;
        }
        let frac = index as f64 / (budget - 1) as f64;
        self.temp_start * (self.temp_end / self.temp_start).powf(frac)
    }
}

impl AcceptancePolicy for Annealing {
    fn begin_sweep(&mut self, index: u64, budget: u64) {
        self.inv_temp = 1.0 / self.temperature(index, budget);
    }

    fn accept(&mut self, delta: i64, uniform: f64) -> bool {
        delta >= 0 || uniform < (delta as f64 * self.inv_temp).exp()
    }

    fn uses_uniform(&self) -> bool {
        true
    }
}

/// Keeps a copy of the best configuration without copying all n spins on
/// every improvement: only variables flipped since the last improvement are
/// written back.
struct BestTracker {
    cut: i64,
    spins: Vec<i8>,
    pending: Vec<usize>,
    marked: Vec<bool>,
}

impl BestTracker {
    fn new(spins: &[i8], cut: i64) -> Self {
        Self {
            cut,
            spins: spins.to_vec(),
            pending: Vec::new(),
            marked: vec![false; spins.len()],
        }
    }

    #[inline]
    fn note_flip(&mut self, index: usize) {
        if !self.marked[index] {
            self.marked[index] = true;
            self.pending.push(index);
        }
    }

    fn commit(&mut self, current: &[i8], cut: i64) {
        for i in self.pending.drain(..) {
            self.spins[i] = current[i];
            self.marked[i] = false;
        }
        self.cut = cut;
    }
}

/// Runs one trial with an arbitrary acceptance policy.
pub fn run_with_policy<P: AcceptancePolicy>(
    instance: &ProblemInstance,
    sweeps: u64,
    seed: u64,
    policy: &mut P,
) -> Result<TrialResult, SolverError> {
    let n = instance.n();
    if n == 0 {
        return Err(SolverError::EmptyInstance);
    }
    if sweeps == 0 {
        return Err(SolverError::NoSweeps);
    }
    let started = Instant::now();
    let mut walk = SeededRng::new(seed, 0);
    let mut coins = SeededRng::new(seed, 1);
    let draw_uniform = policy.uses_uniform();

    let mut config = SpinConfiguration::from_bits((0..n).map(|_| walk.coin()));
    let mut cut = cut_value(instance, &config).expect("length matches by construction");
    let mut best = BestTracker::new(config.as_slice(), cut);
    let mut order: Vec<usize> = (0..n).collect();
    let mut executed = 0;

    for sweep in 0..sweeps {
        policy.begin_sweep(sweep, sweeps);
        walk.shuffle(&mut order);
        let mut flipped = false;
        for &i in &order {
            let delta = delta_at(instance, config.as_slice(), i);
            let uniform = if draw_uniform { coins.unit_f64() } else { 0.0 };
            if policy.accept(delta, uniform) {
                config.flip_index(i);
                cut += delta;
                best.note_flip(i);
                flipped = true;
                if cut > best.cut {
                    best.commit(config.as_slice(), cut);
                }
            }
        }
        executed = sweep + 1;
        if !flipped && policy.halts_when_stuck() {
            break;
        }
    }

    Ok(TrialResult {
        best_cut: best.cut,
        best_spins: SpinConfiguration::from_raw(best.spins),
        sweeps_executed: executed,
        wall_time_s: started.elapsed().as_secs_f64(),
        seed,
    })
}

/// Runs one trial as described by `config`.
pub fn run_trial(instance: &ProblemInstance, config: &SolverConfig) -> Result<TrialResult, SolverError> {
    config.validate()?;
    match config.kind {
        SolverKind::GreedyLocalSearch => run_with_policy(instance, config.sweeps, config.seed, &mut Greedy),
        SolverKind::SimulatedAnnealing => run_with_policy(
            instance,
            config.sweeps,
            config.seed,
            &mut Annealing::new(config.temp_start, config.temp_end),
        ),
    }
}
