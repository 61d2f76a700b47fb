//! Deterministic sharding of sampled checks.
//!
//! A run of `count` samples is cut into fixed-size shards. Shard `s` draws
//! from a ChaCha8 stream keyed by the master seed with stream id `s`, so the
//! samples, and therefore the reported witness, do not depend on how many
//! worker threads execute the shards.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const SHARD_SIZE: u64 = 256;

pub const THREADS_ENV: &str = "KITEFORGE_THREADS";

/// Sizes the global rayon pool from `KITEFORGE_THREADS` when it is set to a
/// positive integer. Returns the thread count that was requested, if any.
/// Only the first call can take effect.
pub fn init_thread_pool() -> Option<usize> {
    let n = std::env::var(THREADS_ENV).ok()?.trim().parse::<usize>().ok()?;
    if n == 0 {
        return None;
    }
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Some(n)
}

/// The generator for shard `shard` under `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Runs `check(index, rng)` for every sample index in `0..count` and returns
/// the failure with the lowest index. Within a shard, samples are drawn in
/// index order from that shard's generator.
pub fn find_first_failure<W, F>(seed: u64, count: u64, check: F) -> Option<(u64, W)>
where
    W: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> Option<W> + Sync,
{
    let shards = count.div_ceil(SHARD_SIZE);
    (0..shards).into_par_iter().find_map_first(|s| {
        let mut rng = shard_rng(seed, s);
        let start = s * SHARD_SIZE;
        let end = (start + SHARD_SIZE).min(count);
        (start..end).find_map(|i| check(i, &mut rng).map(|w| (i, w)))
    })
}
