//! Seeded sampling used by the verification commands and tests.
//!
//! All randomness flows through `ChaCha8Rng::seed_from_u64`, so every report
//! is reproducible bit-for-bit from its seed. Entries are drawn uniformly
//! from {-5, ..., 5}, excluding 0 on diagonals.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat_i64, Mat, Rational};

pub const ENTRY_RANGE: std::ops::RangeInclusive<i64> = -5..=5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn entry(rng: &mut ChaCha8Rng) -> Rational {
    rat_i64(rng.random_range(ENTRY_RANGE))
}

pub fn nonzero_entry(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = rng.random_range(ENTRY_RANGE);
        if v != 0 {
            return rat_i64(v);
        }
    }
}

/// Random invertible lower-triangular matrix.
pub fn lower_triangular(rng: &mut ChaCha8Rng, n: usize) -> Mat<Rational> {
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in 0..i {
            m.set(i, j, entry(rng));
        }
        m.set(i, i, nonzero_entry(rng));
    }
    m
}

/// Random unitriangular matrix (upper when `upper` is set).
pub fn unitriangular(rng: &mut ChaCha8Rng, n: usize, upper: bool) -> Mat<Rational> {
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            if (upper && j > i) || (!upper && j < i) {
                m.set(i, j, entry(rng));
            }
        }
    }
    m
}

/// Random dense matrix.
pub fn dense(rng: &mut ChaCha8Rng, n: usize) -> Mat<Rational> {
    Mat::from_fn(n, |_, _| entry(rng))
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| entry(rng)).collect()
}
