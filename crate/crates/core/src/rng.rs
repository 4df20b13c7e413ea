//! Deterministic random streams.
//!
//! Every stream is a ChaCha8 generator keyed by the user seed, with the ChaCha stream
//! id selecting an independent sequence. Parallel work is split into fixed batches and
//! batch `i` always draws from stream `i`, so results do not depend on thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type LabRng = ChaCha8Rng;

/// Stream `stream` of seed `seed`.
pub fn stream(seed: u64, stream: u64) -> LabRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Sub-seed for a named purpose, so separate experiments in one run stay independent.
pub fn derive_seed(seed: u64, purpose: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ purpose.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
