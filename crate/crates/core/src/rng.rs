//! Reproducible pseudo-random streams.
//!
//! The generator is SplitMix64 (an additive counter followed by two
//! xor-shift-multiply mixing rounds). A stream is addressed by
//! `(seed, stream_index)`: its initial state is
//! `seed ⊕ (stream_index · 0xD1B54A32D192ED03)`, and the first
//! [`WARM_UP`] outputs are discarded. Only wrapping 64-bit integer arithmetic is
//! involved, so every platform produces the same sequence.

use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_MULTIPLIER: u64 = 0xD1B5_4A32_D192_ED03;

/// Outputs discarded after seeding a stream.
pub const WARM_UP: usize = 8;

/// Identifies one reproducible random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedContract {
    pub seed: u64,
    pub stream_index: u64,
}

impl SeedContract {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self { seed, stream_index }
    }

    pub fn rng(&self) -> SplitMix64 {
        SplitMix64::for_stream(self.seed, self.stream_index)
    }
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Raw generator with the given state and no warm-up.
    pub fn from_state(state: u64) -> Self {
        Self { state }
    }

    pub fn for_stream(seed: u64, stream_index: u64) -> Self {
        let mut rng = Self::from_state(seed ^ stream_index.wrapping_mul(STREAM_MULTIPLIER));
        for _ in 0..WARM_UP {
            rng.next_u64();
        }
        rng
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[0, bound)` by Lemire's multiply-and-reject method.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = self.next_u64() as u128 * bound as u128;
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = self.next_u64() as u128 * bound as u128;
            }
        }
        (m >> 64) as u64
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
