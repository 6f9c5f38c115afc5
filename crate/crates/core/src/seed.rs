//! Seed derivation for retry loops.
//!
//! Attempt `i` of a run with master seed `s` uses the `(i + 1)`-th output of
//! a SplitMix64 generator started at `s`:
//!
//! ```text
//! z = s + (i + 1) * 0x9E3779B97F4A7C15      (wrapping)
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z ^ (z >> 31)
//! ```
//!
//! The derived seed then seeds a ChaCha8 stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed for attempt `attempt` of a run started with `master`.
pub fn derive(master: u64, attempt: u64) -> u64 {
    let mut z = master.wrapping_add(attempt.wrapping_add(1).wrapping_mul(GOLDEN));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator used for one attempt.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
