//! Seed derivation. Every random choice in the library draws from a
//! `ChaCha8Rng` seeded through [`derive_seed`], so a run is fully determined
//! by the master seed and the (phase, level, repetition, ...) path of the
//! draw, independent of thread scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Counter-based splitter: mixes `path` components into `master` one word at
/// a time. Distinct paths yield independent-looking streams.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    let mut state = splitmix(master ^ 0x6a09_e667_f3bc_c908);
    for &word in path {
        state = splitmix(state ^ splitmix(word));
    }
    state
}

/// RNG for the stream identified by `path` under `master`.
pub fn stream(master: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, path))
}
