//! Counter-based random streams.
//!
//! Every trial owns an independent ChaCha8 stream keyed by the experiment seed
//! and the sweep point, with the trial index selecting the stream number. The
//! draws seen by a trial therefore depend only on `(seed, point, trial)` and
//! never on which worker thread executes it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream handed to every stochastic operation.
pub type Stream = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_for(seed: u64, point: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut state = seed ^ splitmix64(point.wrapping_add(0xD134_2543_DE82_EF95));
    for chunk in key.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    key
}

/// Stream for trial `trial` of sweep point `point`.
pub fn trial_stream(seed: u64, point: u64, trial: u64) -> Stream {
    let mut rng = ChaCha8Rng::from_seed(key_for(seed, point));
    rng.set_stream(trial);
    rng
}

/// Convenience stream for one-off use (examples, tests, bootstrap).
pub fn seeded(seed: u64) -> Stream {
    trial_stream(seed, u64::MAX, 0)
}
