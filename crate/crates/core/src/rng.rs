//! Process-wide seed for the randomized algorithms (equal-degree splitting,
//! divisor sampling). Results never depend on the seed; only running times do.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2b0c_a11e_d0e5;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

pub fn set_global_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn global_seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// A generator for one independent consumer, derived from the global seed.
pub fn stream(tag: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(global_seed());
    rng.set_stream(tag);
    rng
}
