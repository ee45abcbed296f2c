//! Deterministic block-parallel folds.
//!
//! Work over `0..n` is cut into fixed blocks of [`BLOCK_SIZE`] indices. Every
//! block draws from its own ChaCha stream keyed by `(seed, domain, block)`,
//! so results depend only on the inputs and never on the thread count or on
//! whether the `parallel` feature is enabled. Block results must be merged
//! with an associative, commutative operation (counts, min, max).

use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const BLOCK_SIZE: u64 = 4096;

/// How a fold is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, otherwise runs sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// The random stream for one block.
pub fn block_rng(seed: u64, domain: u64, block: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(block);
    rng
}

fn block_range(n: u64, block: u64) -> Range<u64> {
    let start = block * BLOCK_SIZE;
    start..(start + BLOCK_SIZE).min(n)
}

/// Folds `body` over the blocks of `0..n` and merges the block results.
pub fn fold_blocks<A, I, B, M>(exec: Exec, n: u64, identity: I, body: B, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    B: Fn(u64, Range<u64>) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK_SIZE);
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..blocks)
                .into_par_iter()
                .map(|b| body(b, block_range(n, b)))
                .reduce(&identity, &merge)
        }
        _ => (0..blocks)
            .map(|b| body(b, block_range(n, b)))
            .fold(identity(), &merge),
    }
}

/// Like [`fold_blocks`], handing each block its own seeded generator.
pub fn fold_seeded<A, I, B, M>(
    exec: Exec,
    n: u64,
    seed: u64,
    domain: u64,
    identity: I,
    body: B,
    merge: M,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    B: Fn(&mut ChaCha8Rng, Range<u64>) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    fold_blocks(
        exec,
        n,
        identity,
        |b, range| body(&mut block_rng(seed, domain, b), range),
        merge,
    )
}

/// Runs `body` on each block of `0..n` with its seeded generator and returns
/// the block outputs in block order.
pub fn map_seeded<A, B>(exec: Exec, n: u64, seed: u64, domain: u64, body: B) -> Vec<A>
where
    A: Send,
    B: Fn(&mut ChaCha8Rng, Range<u64>) -> A + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK_SIZE);
    let run = |b: u64| body(&mut block_rng(seed, domain, b), block_range(n, b));
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..blocks).into_par_iter().map(run).collect()
        }
        _ => (0..blocks).map(run).collect(),
    }
}
