//! Seeded randomness. Every random choice in the crate goes through
//! [`stream`]: ChaCha8 keyed by a 64-bit seed (via `seed_from_u64`) with the
//! ChaCha stream number set to the instance index, so instance `i` of a sweep
//! draws the same values no matter which other instances run.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exact::{rat, Point, Rational};

pub type Rng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `0..n` (Lemire's multiply-shift; `n > 0`).
pub fn below(rng: &mut Rng, n: u64) -> u64 {
    assert!(n > 0);
    loop {
        let x = rng.next_u64();
        let m = (x as u128) * (n as u128);
        let low = m as u64;
        if low >= n.wrapping_neg() % n {
            return (m >> 64) as u64;
        }
    }
}

/// Uniform integer in `lo..=hi`.
pub fn int_in(rng: &mut Rng, lo: i64, hi: i64) -> i64 {
    assert!(lo <= hi);
    lo + below(rng, (hi - lo) as u64 + 1) as i64
}

/// Fisher–Yates shuffle.
pub fn shuffle<T>(rng: &mut Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

pub fn permutation(rng: &mut Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut p);
    p
}

/// Rational `k / den` with `k` uniform in `−range·den ..= range·den`.
pub fn rational_in(rng: &mut Rng, range: i64, den: i64) -> Rational {
    rat(int_in(rng, -range * den, range * den), den)
}

/// Random point with coordinates from [`rational_in`].
pub fn point_in_box(rng: &mut Rng, dim: usize, range: i64, den: i64) -> Point {
    Point::new((0..dim).map(|_| rational_in(rng, range, den)).collect())
}
