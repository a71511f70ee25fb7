//! Reference implementations shared by the integration suites. Everything
//! here is deliberately naive: dense matrices and full enumeration.

#![allow(dead_code)]

use gsetkit::rng::SeededRng;
use gsetkit::{ProblemInstance, SpinConfiguration};

/// Dense symmetric weight matrix, 0-based.
pub fn dense(inst: &ProblemInstance) -> Vec<Vec<i64>> {
    let n = inst.n();
    let mut w = vec![vec![0i64; n]; n];
    for e in inst.edges() {
        let (u, v) = (e.u as usize - 1, e.v as usize - 1);
        w[u][v] += e.w;
        w[v][u] += e.w;
    }
    w
}

pub fn naive_cut(w: &[Vec<i64>], s: &[i8]) -> i64 {
    let mut cut = 0;
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            if s[i] != s[j] {
                cut += w[i][j];
            }
        }
    }
    cut
}

pub fn naive_energy(w: &[Vec<i64>], s: &[i8]) -> i64 {
    let mut h = 0;
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            h += w[i][j] * i64::from(s[i]) * i64::from(s[j]);
        }
    }
    h
}

/// Spins of `code` with bit `n-1-k` giving vertex `k` (vertex 1 is the MSB).
pub fn spins_of(code: u64, n: usize) -> Vec<i8> {
    (0..n)
        .map(|k| if code >> (n - 1 - k) & 1 == 1 { 1 } else { -1 })
        .collect()
}

/// Maximum cut over all 2^n configurations, no symmetry reduction.
pub fn naive_max_cut(inst: &ProblemInstance) -> i64 {
    let w = dense(inst);
    let n = inst.n();
    (0..1u64 << n).map(|c| naive_cut(&w, &spins_of(c, n))).max().unwrap()
}

/// Random simple graph: each pair is an edge with probability `density`,
/// weights uniform in `[-max_w, max_w] \ {0}`.
pub fn random_instance(rng: &mut SeededRng, n: u32, density: f64, max_w: i64) -> ProblemInstance {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.unit_f64() < density {
                let mag = 1 + rng.below(max_w as u64) as i64;
                let w = if rng.coin() { mag } else { -mag };
                edges.push((u, v, w));
            }
        }
    }
    ProblemInstance::from_edges("random", n, edges).unwrap()
}

pub fn random_config(rng: &mut SeededRng, n: usize) -> SpinConfiguration {
    SpinConfiguration::from_bits((0..n).map(|_| rng.coin()))
}
