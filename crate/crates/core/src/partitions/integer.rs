use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{RecsumError, Result};

/// A partition of `m` stored as its multiplicity vector `(y_1, ..., y_m)`,
/// where `y_i` counts the parts equal to `i`.
///
/// The vector always has length exactly `m` (trailing zeros included) and
/// satisfies `sum_i i * y_i = m`. The empty vector is the single partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultPartition {
    multiplicities: Vec<u32>,
}

impl MultPartition {
    /// Validates a multiplicity vector; its length is the partitioned integer.
    pub fn new(multiplicities: Vec<u32>) -> Result<Self> {
        let m = multiplicities.len();
        let weight: u64 = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as u64 + 1) * y as u64)
            .sum();
        if weight != m as u64 {
            return Err(RecsumError::invalid(format!(
                "multiplicity vector of length {m} has weight {weight}"
            )));
        }
        Ok(MultPartition { multiplicities })
    }

    /// Builds the partition of `sum(parts)` with the given (positive) parts, in any order.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(RecsumError::invalid("partition parts must be positive"));
        }
        let m: usize = parts.iter().sum();
        let mut multiplicities = vec![0u32; m];
        for &p in parts {
            multiplicities[p - 1] += 1;
        }
        Ok(MultPartition { multiplicities })
    }

    /// The partitioned integer.
    pub fn m(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `y_i` for 1-based `i`; zero for `i` outside `1..=m`.
    pub fn multiplicity(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.multiplicities.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of parts, `sum_i y_i`.
    pub fn length(&self) -> usize {
        self.multiplicities.iter().map(|&y| y as usize).sum()
    }

    /// `(part, multiplicity)` pairs with nonzero multiplicity, ascending part.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &y)| y > 0)
            .map(|(i, &y)| (i + 1, y))
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        for (i, &y) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i + 1, y as usize));
        }
        out
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.multiplicities.iter().rposition(|&y| y > 0).map(|i| i + 1)
    }
}

impl fmt::Display for MultPartition {
    /// `{3=1,1=1}`: part=multiplicity, largest part first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, &y) in self.multiplicities.iter().enumerate().rev() {
            if y > 0 {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}={}", i + 1, y)?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MultPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MultPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.multiplicities.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        MultPartition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Streams the partitions of `m`, largest part first, in reverse
/// lexicographic order of the part lists: for `m = 4` that is
/// `4`, `3+1`, `2+2`, `2+1+1`, `1+1+1+1`.
#[derive(Debug, Clone)]
pub struct Partitions {
    m: usize,
    parts: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(m: usize) -> Self {
        let parts = if m == 0 { Vec::new() } else { vec![m] };
        Partitions { m, parts, done: false }
    }

    fn advance(&mut self) {
        let mut rem = 0usize;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            rem += 1;
        }
        let Some(last) = self.parts.pop() else {
            self.done = true;
            return;
        };
        let x = last - 1;
        rem += 1;
        self.parts.push(x);
        while rem >= x {
            self.parts.push(x);
            rem -= x;
        }
        if rem > 0 {
            self.parts.push(rem);
        }
    }
}

impl Iterator for Partitions {
    type Item = MultPartition;

    fn next(&mut self) -> Option<MultPartition> {
        if self.done {
            return None;
        }
        let mut multiplicities = vec![0u32; self.m];
        for &p in &self.parts {
            multiplicities[p - 1] += 1;
        }
        self.advance();
        Some(MultPartition { multiplicities })
    }
}

/// All partitions of `m` in the [`Partitions`] order.
pub fn enumerate_partitions(m: usize) -> Vec<MultPartition> {
    Partitions::new(m).collect()
}

/// The partitions of `m` with exactly `r` parts, in the [`Partitions`] order.
pub fn enumerate_partitions_with_length(m: usize, r: usize) -> Vec<MultPartition> {
    if r > m || (r == 0 && m > 0) {
        return Vec::new();
    }
    Partitions::new(m).filter(|p| p.length() == r).collect()
}

/// Number of partitions `p(m)` from Euler's pentagonal-number recurrence
/// `p(k) = sum_{j>=1} (-1)^(j-1) [p(k - j(3j-1)/2) + p(k - j(3j+1)/2)]`.
pub fn partition_function(m: usize) -> BigUint {
    let mut table: Vec<BigInt> = Vec::with_capacity(m + 1);
    table.push(BigInt::from(1));
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = table[k - g1].clone();
            if g2 <= k {
                term += &table[k - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        table.push(acc);
    }
    table[m].to_biguint().expect("partition counts are positive")
}

/// `p(m)` as a machine integer, for counters. Panics past `u64`.
pub fn partition_count(m: usize) -> u64 {
    partition_function(m).to_u64().expect("p(m) fits in u64")
}

/// Largest part any partition of `m` into `r` parts can contain: `m - r + 1`.
pub fn largest_part_bound(m: usize, r: usize) -> Result<usize> {
    if r == 0 || r > m {
        return Err(RecsumError::invalid(format!(
            "need 1 <= r <= m, got m={m}, r={r}"
        )));
    }
    Ok(m - r + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts_of(ps: &[MultPartition]) -> Vec<Vec<usize>> {
        ps.iter().map(|p| p.parts()).collect()
    }

    #[test]
    fn zero_has_one_empty_partition() {
        let ps = enumerate_partitions(0);
        assert_eq!(ps.len(), 1);
        assert!(ps[0].multiplicities().is_empty());
        assert_eq!(ps[0].length(), 0);
    }

    #[test]
    fn order_for_four() {
        let ps = enumerate_partitions(4);
        assert_eq!(
            parts_of(&ps),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(ps[1].multiplicities(), &[1, 0, 1, 0]);
        assert_eq!(ps[1].to_string(), "{3=1,1=1}");
    }

    #[test]
    fn with_length() {
        let ps = enumerate_partitions_with_length(4, 2);
        assert_eq!(parts_of(&ps), vec![vec![3, 1], vec![2, 2]]);
        assert!(enumerate_partitions_with_length(4, 5).is_empty());
        assert!(enumerate_partitions_with_length(3, 0).is_empty());
        assert_eq!(enumerate_partitions_with_length(0, 0).len(), 1);
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(partition_function(0), BigUint::from(1u32));
        assert_eq!(partition_function(5), BigUint::from(7u32));
        assert_eq!(enumerate_partitions(5).len(), 7);
        // p(100) from the recurrence; the enumeration cross-check lives in the
        // integration tests for m <= 25.
        assert_eq!(partition_function(100), BigUint::from(190_569_292u64));
    }

    #[test]
    fn bound() {
        assert_eq!(largest_part_bound(6, 2).unwrap(), 5);
        assert_eq!(largest_part_bound(6, 1).unwrap(), 6);
        assert!(largest_part_bound(3, 4).is_err());
        assert!(largest_part_bound(3, 0).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(MultPartition::new(vec![1, 0, 1]).is_err());
        let p = MultPartition::new(vec![1, 1, 0]).unwrap();
        assert_eq!(p.m(), 3);
        assert_eq!(p.largest_part(), Some(2));
        assert_eq!(MultPartition::from_parts(&[2, 1]).unwrap(), p);
        assert!(MultPartition::from_parts(&[0, 1]).is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,1,0]");
        assert!(serde_json::from_str::<MultPartition>("[2,1]").is_err());
    }
}
