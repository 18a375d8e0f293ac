//! Fixtures shared by the criterion benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use workbench_core::circle::sample_uec;
use workbench_core::cyclic::{sample_point, sample_word};
use workbench_core::operads::sample_compact_pairs;
use workbench_core::{ArcSystem, CyclicPoint, CyclicWord, DiskPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An outer configuration of `n` arcs with one inner operation per arc.
pub fn composition_input(
    seed: u64,
    m: u32,
    n: usize,
    inner_arity: usize,
) -> (ArcSystem, Vec<Vec<DiskPair>>) {
    let mut r = rng(seed);
    let outer = sample_uec(&mut r, m, n, 4);
    let inners = (0..n)
        .map(|_| sample_compact_pairs(&mut r, inner_arity))
        .collect();
    (outer, inners)
}

/// Words of `len` letters starting in degree `q`.
pub fn words(seed: u64, count: usize, m: u32, q: usize, len: usize) -> Vec<CyclicWord> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| sample_word(&mut r, m, q, len, q + 3))
        .collect()
}

pub fn points(seed: u64, count: usize, m: u32, q: usize) -> Vec<CyclicPoint> {
    let mut r = rng(seed);
    (0..count).map(|_| sample_point(&mut r, m, q, 12)).collect()
}
