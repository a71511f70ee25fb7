//! Exact cut, Ising energy, single-flip deltas and solution quality.
//!
//! Cut and energy are integers: every edge contributes either 0 or `w` to
//! the cut and `±w` to the energy. With couplings `J = -w` and zero fields
//! they satisfy `energy == total_weight - 2 * cut` for every configuration.

use std::fmt;

use thiserror::Error;

use crate::codec::SpinConfiguration;
use crate::instance::ProblemInstance;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("configuration has {found} spins but the instance has n={expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("best-known cut must be positive, got {0}")]
    NonPositiveBest(i64),
}

fn check_len(instance: &ProblemInstance, config: &SpinConfiguration) -> Result<(), EvalError> {
    if config.len() != instance.n() {
        return Err(EvalError::LengthMismatch {
            expected: instance.n(),
            found: config.len(),
        });
    }
    Ok(())
}

/// Weighted cut: the sum of `w` over edges whose endpoints disagree.
pub fn cut_value(instance: &ProblemInstance, config: &SpinConfiguration) -> Result<i64, EvalError> {
    check_len(instance, config)?;
    let s = config.as_slice();
    Ok(instance
        .edges()
        .iter()
        .filter(|e| s[e.u as usize - 1] != s[e.v as usize - 1])
        .map(|e| e.w)
        .sum())
}

/// Ising energy `H(s) = sum over edges of w_uv * s_u * s_v`.
pub fn ising_energy(instance: &ProblemInstance, config: &SpinConfiguration) -> Result<i64, EvalError> {
    check_len(instance, config)?;
    let s = config.as_slice();
    Ok(instance
        .edges()
        .iter()
        .map(|e| e.w * i64::from(s[e.u as usize - 1] * s[e.v as usize - 1]))
        .sum())
}

/// Change in cut from flipping 1-indexed vertex `k`, from its adjacency only.
pub fn flip_delta_cut(
    instance: &ProblemInstance,
    config: &SpinConfiguration,
    k: u32,
) -> Result<i64, EvalError> {
    check_len(instance, config)?;
    if k == 0 || k as usize > instance.n() {
        return Err(EvalError::VertexOutOfRange { vertex: k, n: instance.n() });
    }
    Ok(delta_at(instance, config.as_slice(), k as usize - 1))
}

/// Unchecked 0-based delta used by the solver inner loops.
#[inline]
pub(crate) fn delta_at(instance: &ProblemInstance, spins: &[i8], index: usize) -> i64 {
    let sk = i64::from(spins[index]);
    let field: i64 = instance
        .row(index)
        .map(|(j, w)| w * i64::from(spins[j]))
        .sum();
    sk * field
}

/// `cut / best_known` as a fraction.
pub fn solution_quality(cut: i64, best_known: i64) -> Result<f64, EvalError> {
    if best_known <= 0 {
        return Err(EvalError::NonPositiveBest(best_known));
    }
    Ok(cut as f64 / best_known as f64)
}

/// Percent with three decimals, e.g. `99.986%`.
pub fn format_quality_pct(quality: f64) -> String {
    format!("{:.3}%", quality * 100.0)
}

/// Cut and energy of one configuration, optionally scored against a
/// best-known cut.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub instance: String,
    pub n: usize,
    pub cut: i64,
    pub energy: i64,
    pub best_known: Option<i64>,
    pub quality: Option<f64>,
}

impl EvaluationReport {
    pub fn evaluate(
        instance: &ProblemInstance,
        config: &SpinConfiguration,
        best_known: Option<i64>,
    ) -> Result<Self, EvalError> {
        let cut = cut_value(instance, config)?;
        let energy = ising_energy(instance, config)?;
        let quality = best_known.map(|b| solution_quality(cut, b)).transpose()?;
        Ok(Self {
            instance: instance.name().to_string(),
            n: instance.n(),
            cut,
            energy,
            best_known,
            quality,
        })
    }

    /// `key=value` pairs in output order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("instance", self.instance.clone()),
            ("n", self.n.to_string()),
            ("cut", self.cut.to_string()),
            ("energy", self.energy.to_string()),
        ];
        if let (Some(best), Some(q)) = (self.best_known, self.quality) {
            out.push(("best_known", best.to_string()));
            out.push(("quality", q.to_string()));
            out.push(("quality_pct", format_quality_pct(q)));
        }
        out
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields = self.fields();
        for (i, (k, v)) in fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
