use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MultPartition;
use crate::error::{RecsumError, Result};

/// Largest ground set accepted by [`enumerate_set_partitions`]; B(10) = 115975.
pub const MAX_SET_PARTITION_M: usize = 10;

/// A partition of `{1, ..., m}` into nonempty blocks.
///
/// Canonical form: each block ascending, blocks ordered by size and then by
/// smallest element. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates that `blocks` cover `1..=m` exactly once and canonicalizes.
    pub fn new(m: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(RecsumError::invalid("empty block in set partition"));
            }
            for &e in block.iter() {
                if e == 0 || e > m {
                    return Err(RecsumError::invalid(format!(
                        "element {e} outside 1..={m}"
                    )));
                }
                if seen[e] {
                    return Err(RecsumError::invalid(format!("element {e} appears twice")));
                }
                seen[e] = true;
            }
            block.sort_unstable();
        }
        if let Some(missing) = (1..=m).find(|&e| !seen[e]) {
            return Err(RecsumError::invalid(format!("element {missing} not covered")));
        }
        blocks.sort_by_key(|b| (b.len(), b[0]));
        Ok(SetPartition { m, blocks })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The integer partition formed by the block sizes.
    pub fn class(&self) -> MultPartition {
        let sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        MultPartition::from_parts(&sizes).expect("blocks are nonempty")
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &SetPartition) -> Result<bool> {
        if self.m != coarser.m {
            return Err(RecsumError::invalid(format!(
                "cannot compare partitions of {} and {} elements",
                self.m, coarser.m
            )));
        }
        let mut owner = vec![0usize; self.m + 1];
        for (idx, block) in coarser.blocks.iter().enumerate() {
            for &e in block {
                owner[e] = idx;
            }
        }
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&e| owner[e] == owner[b[0]])))
    }
}

impl fmt::Display for SetPartition {
    /// `{1,3|2}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let items: Vec<String> = block.iter().map(usize::to_string).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let m = blocks.iter().map(Vec::len).sum();
        SetPartition::new(m, blocks).map_err(serde::de::Error::custom)
    }
}

/// All set partitions of `{1, ..., m}` for `1 <= m <= 10`, in lexicographic
/// order of their restricted growth strings (`000, 001, 010, 011, 012` for m=3).
pub fn enumerate_set_partitions(m: usize) -> Result<Vec<SetPartition>> {
    if m == 0 || m > MAX_SET_PARTITION_M {
        return Err(RecsumError::invalid(format!(
            "set partitions are enumerated for 1 <= m <= {MAX_SET_PARTITION_M}, got {m}"
        )));
    }
    let mut out = Vec::new();
    // rgs[i] is the block label of element i+1; maxes[i] = max(rgs[..=i]).
    let mut rgs = vec![0usize; m];
    let mut maxes = vec![0usize; m];
    loop {
        let nblocks = maxes[m - 1] + 1;
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label].push(i + 1);
        }
        blocks.sort_by_key(|b: &Vec<usize>| (b.len(), b[0]));
        out.push(SetPartition { m, blocks });

        let Some(i) = (1..m).rev().find(|&i| rgs[i] <= maxes[i - 1]) else {
            return Ok(out);
        };
        rgs[i] += 1;
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in i + 1..m {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

/// Number of set partitions of `{1, ..., m}` whose block sizes form `class`:
/// `m! / prod_i (i!^{y_i} y_i!)`.
pub fn set_partition_class_size(class: &MultPartition) -> BigUint {
    fn fact(n: usize) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
    }
    let mut denom = BigUint::one();
    for (i, y) in class.nonzero() {
        denom *= num_traits::pow(fact(i), y as usize) * fact(y as usize);
    }
    fact(class.m()) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_elements_in_growth_string_order() {
        let ps = enumerate_set_partitions(3).unwrap();
        let shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            vec!["{1,2,3}", "{3|1,2}", "{2|1,3}", "{1|2,3}", "{1|2|3}"]
        );
    }

    #[test]
    fn bell_counts() {
        let bell = [1usize, 2, 5, 15, 52, 203, 877, 4140];
        for (m, &b) in (1..=8).zip(bell.iter()) {
            assert_eq!(enumerate_set_partitions(m).unwrap().len(), b);
        }
        assert!(enumerate_set_partitions(0).is_err());
        assert!(enumerate_set_partitions(11).is_err());
    }

    #[test]
    fn class_sizes() {
        let c = MultPartition::from_parts(&[2, 2]).unwrap();
        assert_eq!(set_partition_class_size(&c), BigUint::from(3u32));
        let c = MultPartition::from_parts(&[2, 1, 1]).unwrap();
        assert_eq!(set_partition_class_size(&c), BigUint::from(6u32));
    }

    #[test]
    fn canonical_form_and_validation() {
        let a = SetPartition::new(4, vec![vec![4, 2], vec![3], vec![1]]).unwrap();
        assert_eq!(a.to_string(), "{1|3|2,4}");
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1],[3],[2,4]]");
        let back: SetPartition = serde_json::from_str("[[2,4],[1],[3]]").unwrap();
        assert_eq!(back, a);
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 3]]).is_err());
    }

    #[test]
    fn refinement() {
        let fine = SetPartition::new(3, vec![vec![1], vec![2], vec![3]]).unwrap();
        let mid = SetPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        let other = SetPartition::new(3, vec![vec![1, 3], vec![2]]).unwrap();
        assert!(fine.refines(&mid).unwrap());
        assert!(mid.refines(&mid).unwrap());
        assert!(!mid.refines(&other).unwrap());
        assert!(!mid.refines(&fine).unwrap());
        let four = SetPartition::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert!(mid.refines(&four).is_err());
    }
}
