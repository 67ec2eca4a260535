#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;
use recsum_core::engine::SeqSpec;
use recsum_core::Rational;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Rational with numerator in [-5, 5] and denominator in [1, 6].
pub fn small_rational(rng: &mut SplitMix64) -> Rational {
    let num: i64 = rng.random_range(-5..=5);
    let den: i64 = rng.random_range(1..=6);
    Rational::new(num, den).unwrap()
}

/// A table covering `first..first+len`.
pub fn random_table(rng: &mut SplitMix64, first: i64, len: usize) -> SeqSpec {
    SeqSpec::tabulated(first, (0..len).map(|_| small_rational(rng)).collect())
}

/// Sum over all of `[q, n]^m` filtered to non-decreasing tuples, multiplying
/// each product from scratch. Shares nothing with the library evaluators.
pub fn brute_force(m: usize, q: i64, n: i64, seqs: &[SeqSpec]) -> Rational {
    let width = (n - q + 1) as usize;
    let total_tuples = width.pow(m as u32);
    let mut sum = Rational::zero();
    for code in 0..total_tuples {
        let mut idx = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            idx.push(q + (c % width) as i64);
            c /= width;
        }
        if idx.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut prod = Rational::one();
        for (k, &nk) in idx.iter().enumerate() {
            prod *= seqs[k].eval(nk).unwrap();
        }
        sum += prod;
    }
    sum
}

pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(m - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out
}
