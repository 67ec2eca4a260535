//! Factorials, binomials, unsigned Stirling numbers of the first kind,
//! Bernoulli numbers and Bell polynomials, plus checkers for the partition
//! identities that tie them together.

mod identities;

pub use identities::*;

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{RecsumError, Result};
use crate::partitions::enumerate_partitions_with_length;

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Row `m` of the table is the coefficient list of the rising factorial
/// `x (x+1) ... (x+m-1)`, lowest degree first.
static STIRLING_ROWS: RwLock<Vec<Vec<BigUint>>> = RwLock::new(Vec::new());

fn with_stirling_row<T>(m: usize, f: impl FnOnce(&[BigUint]) -> T) -> T {
    {
        let rows = STIRLING_ROWS.read().expect("stirling cache poisoned");
        if let Some(row) = rows.get(m) {
            return f(row);
        }
    }
    let mut rows = STIRLING_ROWS.write().expect("stirling cache poisoned");
    if rows.is_empty() {
        rows.push(vec![BigUint::one()]);
    }
    while rows.len() <= m {
        // multiply the previous row by (x + k) where k = len - 1
        let k = BigUint::from(rows.len() - 1);
        let prev = rows.last().expect("nonempty");
        let mut next = vec![BigUint::zero(); prev.len() + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] += c * &k;
        }
        rows.push(next);
    }
    f(&rows[m])
}

/// Unsigned Stirling number of the first kind `[m r]`: the coefficient of
/// `x^r` in `x (x+1) ... (x+m-1)`.
pub fn stirling_first_unsigned(m: usize, r: usize) -> Result<BigUint> {
    if r > m {
        return Err(RecsumError::invalid(format!(
            "stirling number [{m} {r}] needs r <= m"
        )));
    }
    Ok(with_stirling_row(m, |row| row[r].clone()))
}

/// `[m r]` with the convention that out-of-range indices give 0.
pub(crate) fn stirling_or_zero(m: i64, r: i64) -> BigUint {
    if m < 0 || r < 0 || r > m {
        return BigUint::zero();
    }
    with_stirling_row(m as usize, |row| row[r as usize].clone())
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_j` with `B_1 = -1/2`, from
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli(j: usize) -> Rational {
    {
        let cache = BERNOULLI.read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(j) {
            return b.clone();
        }
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= j {
        let n = cache.len();
        let mut acc = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(binomial(n as u64 + 1, k as u64)) * b;
            }
        }
        let bn = -acc / Rational::from(n + 1);
        cache.push(bn);
    }
    cache[j].clone()
}

/// Partial Bell polynomial `B_{m,r}(x_1, ..., x_{m-r+1})`, with `x[0] = x_1`.
///
/// Evaluated as `m! * sum over length-r partitions of m of prod_i (1/y_i!) (x_i/i!)^{y_i}`.
/// For `r >= 1` at least `m - r + 1` values are required; `B_{0,0} = 1`.
pub fn partial_bell(m: usize, r: usize, x: &[Rational]) -> Result<Rational> {
    if r > m {
        return Err(RecsumError::invalid(format!(
            "partial Bell polynomial B_{{{m},{r}}} needs r <= m"
        )));
    }
    if r >= 1 && x.len() < m - r + 1 {
        return Err(RecsumError::invalid(format!(
            "B_{{{m},{r}}} needs {} arguments, got {}",
            m - r + 1,
            x.len()
        )));
    }
    let scaled: Vec<Rational> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi / Rational::from(factorial(i + 1)))
        .collect();
    let mut sum = Rational::zero();
    for part in enumerate_partitions_with_length(m, r) {
        let mut term = Rational::one();
        for (i, y) in part.nonzero() {
            term *= scaled[i - 1].powu(y);
            term = term / Rational::from(factorial(y as usize));
        }
        sum += term;
    }
    Ok(sum * Rational::from(factorial(m)))
}

/// Complete Bell polynomial `B_m(x_1, ..., x_m) = sum_r B_{m,r}`.
pub fn complete_bell(m: usize, x: &[Rational]) -> Result<Rational> {
    if x.len() < m {
        return Err(RecsumError::invalid(format!(
            "complete Bell polynomial B_{m} needs {m} arguments, got {}",
            x.len()
        )));
    }
    let mut sum = Rational::zero();
    for r in 0..=m {
        sum += partial_bell(m, r, x)?;
    }
    Ok(sum)
}

pub(crate) fn big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}
