//! Seeded random streams.
//!
//! All randomness comes from ChaCha8 keyed by an explicit 64-bit seed.
//! Independent consumers (Alice, Bob, Monte Carlo chunks) use separate
//! ChaCha stream ids under the same seed, so results never depend on
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream ids reserved for protocol endpoints.
pub const ALICE_STREAM: u64 = 0;
pub const BOB_STREAM: u64 = 1;

pub fn stream(seed: u64, stream_id: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Derives a child seed, e.g. one per block of a multi-block session.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
