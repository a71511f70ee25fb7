//! Portable seeded randomness.
//!
//! Every random decision in the toolkit goes through [`SeededRng`] so that
//! runs are reproducible bit-for-bit across platforms and across independent
//! implementations. The construction is fully specified here:
//!
//! * **Mixing.** [`mix64`]`(a, b)` is the SplitMix64 finalizer applied to
//!   `a + GAMMA * (b + 1)` (wrapping arithmetic, `GAMMA = 0x9e3779b97f4a7c15`).
//!   Campaign trial seeds are `mix64(master_seed, trial_index)`.
//! * **Generator.** A stream `(seed, stream_id)` is a ChaCha8 generator whose
//!   32-byte key is the little-endian concatenation of four SplitMix64 outputs
//!   started from state `mix64(seed, stream_id)`.
//! * **Bounded integers.** [`SeededRng::below`] uses Lemire's widening
//!   multiply with rejection, so it is unbiased and draws a data-independent
//!   number of words only in the rare rejection case.
//! * **Unit reals.** [`SeededRng::unit_f64`] takes the top 53 bits of one
//!   64-bit word and scales by 2^-53, giving a value in `[0, 1)`.
//! * **Shuffles.** [`SeededRng::shuffle`] is the descending Fisher-Yates
//!   shuffle: for `i = len-1 .. 1`, swap `i` with `below(i + 1)`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn fmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic 64-bit mix of two words. Used to derive per-trial and
/// per-stream seeds without coordination between workers.
#[inline]
pub fn mix64(a: u64, b: u64) -> u64 {
    fmix64(a.wrapping_add(GAMMA.wrapping_mul(b.wrapping_add(1))))
}

/// Seed of trial `index` in a campaign started from `master_seed`.
pub fn trial_seed(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed, index)
}

/// A seeded, portable random stream.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut state = mix64(seed, stream);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            state = state.wrapping_add(GAMMA);
            chunk.copy_from_slice(&fmix64(state).to_le_bytes());
        }
        Self {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, bound)`. `bound` must be nonzero.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fair coin: the top bit of one word.
    #[inline]
    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
