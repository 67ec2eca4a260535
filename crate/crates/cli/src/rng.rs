//! Seeded generation of random test sequences.
//!
//! The generator is SplitMix64 seeded directly with the user's 64-bit seed.
//! Each test case derives its own stream from `(seed, case key)` so that the
//! values of one case do not depend on which other cases ran.

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;
use recsum_core::engine::SeqSpec;
use recsum_core::Rational;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Stream for one case: the seed mixed with the case's coordinates.
pub fn case_rng(seed: u64, coords: &[u64]) -> SplitMix64 {
    let mut h = seed;
    for &c in coords {
        // FNV-style fold; SplitMix64 scrambles the result
        h = (h ^ c).wrapping_mul(0x0000_0100_0000_01b3);
    }
    seeded(h)
}

/// Numerator uniform in `[-5, 5]`, denominator uniform in `[1, 6]`.
pub fn random_rational(rng: &mut SplitMix64) -> Rational {
    let num: i64 = rng.random_range(-5..=5);
    let den: i64 = rng.random_range(1..=6);
    Rational::new(num, den).expect("nonzero denominator")
}

/// A table of `len` random values starting at index `first`.
pub fn random_table(rng: &mut SplitMix64, first: i64, len: usize) -> SeqSpec {
    SeqSpec::tabulated(first, (0..len).map(|_| random_rational(rng)).collect())
}
