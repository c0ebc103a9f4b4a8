//! Seeded random substreams.
//!
//! Every random draw in the pipeline comes from one run seed. Consumers ask
//! for a named substream so that, for example, changing how many pairs are
//! sampled never perturbs the split shuffle.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SAMPLING: &str = "sampling";
pub const SPLITTING: &str = "splitting";
pub const RANDOM_BASELINE: &str = "random-baseline";

/// ChaCha8 generator for `(seed, name)`; the name selects the stream id.
pub fn substream(seed: u64, name: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name.as_bytes()));
    rng
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}
