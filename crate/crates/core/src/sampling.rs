//! Seeded random instances.
//!
//! Everything is driven by SplitMix64 so that a seed reproduces the same
//! instances in any language:
//!
//! * `below(n)` is the high word of the 128-bit product `next_u64() · n`;
//! * `coin()` is the top bit of `next_u64()`;
//! * `unit()` is `(next_u64() >> 11) · 2^-53`;
//! * shuffles are Fisher–Yates from the last index down, swapping `i` with
//!   `below(i + 1)`.

use rand_core::RngCore;
use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;

use crate::sets::IntSet;

pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Integer in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Each element of `[n]` independently with probability 1/2.
pub fn random_subset(n: usize, rng: &mut Rng) -> IntSet {
    IntSet::interval(n, (1..=n).filter(|_| rng.coin())).expect("in range")
}

/// A uniformly chosen `size`-element subset of `pool`, as a subset of `[n]`.
pub fn random_sized_subset(n: usize, pool: &[usize], size: usize, rng: &mut Rng) -> IntSet {
    let mut pool = pool.to_vec();
    rng.shuffle(&mut pool);
    IntSet::interval(n, pool.into_iter().take(size)).expect("pool inside [n]")
}

/// Random sum-free subset of `[n]`: walk a shuffled `[n]` and keep each
/// element on a coin flip, provided the set stays sum-free.
pub fn random_sum_free(n: usize, rng: &mut Rng) -> IntSet {
    let mut order: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut order);
    let mut member = vec![false; 2 * n + 1];
    let mut chosen: Vec<usize> = Vec::new();
    for x in order {
        if !rng.coin() || member[2 * x] {
            continue;
        }
        let clashes = chosen.iter().any(|&s| {
            member[x + s] || (s > x && member[s - x]) || (x > s && member[x - s]) || 2 * s == x
        });
        if !clashes {
            member[x] = true;
            chosen.push(x);
        }
    }
    IntSet::interval(n, chosen).expect("in range")
}
