//! Seeded, splittable randomness.
//!
//! Every output sample gets its own ChaCha stream, so a run with `count`
//! samples is reproducible sample-by-sample regardless of how many attempts
//! earlier samples needed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
