//! Exact Max-Cut by exhaustive enumeration for small instances.
//!
//! Spin 1 is pinned to +1 (zero fields make every configuration and its
//! global flip equivalent), and spins 2..n are walked in binary-reflected
//! Gray-code order so each step is a single flip scored with the incremental
//! delta. Among maximal configurations the one with the lowest binary
//! encoding wins, reading variable 1 as the most significant bit and spin +1
//! as bit 1.

use thiserror::Error;

use crate::codec::SpinConfiguration;
use crate::eval::{cut_value, delta_at};
use crate::instance::ProblemInstance;

/// Largest instance the oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("exact enumeration limited to n <= {MAX_ORACLE_VERTICES}, got n={0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCut {
    pub cut: i64,
    pub config: SpinConfiguration,
}

pub fn exact_max_cut(instance: &ProblemInstance) -> Result<ExactCut, OracleError> {
    let n = instance.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    let mut spins = vec![-1i8; n];
    spins[0] = 1;
    let top = n - 1;
    let mut code: u32 = 1 << top;
    let mut cut = cut_value(instance, &SpinConfiguration::from_raw(spins.clone()))
        .expect("length matches by construction");
    let (mut best_cut, mut best_code) = (cut, code);

    for step in 1u64..(1u64 << top) {
        // Gray code flips free variable `step.trailing_zeros()`, counted from
        // the last vertex so the low bits of `code` move first.
        let bit = step.trailing_zeros() as usize;
        let index = n - 1 - bit;
        cut += delta_at(instance, &spins, index);
        spins[index] = -spins[index];
        code ^= 1 << bit;
        if cut > best_cut || (cut == best_cut && code < best_code) {
            best_cut = cut;
            best_code = code;
        }
    }

    let config = SpinConfiguration::from_bits((0..n).map(|i| best_code >> (top - i) & 1 == 1));
    Ok(ExactCut { cut: best_cut, config })
}
