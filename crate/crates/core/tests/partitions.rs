use std::collections::BTreeSet;

use num_bigint::BigUint;
use recsum_core::partitions::{
    enumerate_partitions, enumerate_partitions_with_length, enumerate_set_partitions,
    largest_part_bound, partition_function, set_partition_class_size,
};
use recsum_core::MultPartition;

/// Partitions of `m` with parts at most `max`, counted by the usual
/// two-index recurrence.
fn count_bounded(m: usize, max: usize) -> u64 {
    if m == 0 {
        return 1;
    }
    if max == 0 {
        return 0;
    }
    let with = if max <= m { count_bounded(m - max, max) } else { 0 };
    with + count_bounded(m, max - 1)
}

/// Bell numbers from the Bell triangle.
fn bell(m: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..m {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    *row.last().unwrap()
}

#[test]
fn enumeration_matches_partition_function() {
    for m in 0..=25 {
        let ps = enumerate_partitions(m);
        assert_eq!(BigUint::from(ps.len()), partition_function(m), "m={m}");
        assert_eq!(ps.len() as u64, count_bounded(m, m), "m={m}");
        let distinct: BTreeSet<_> = ps.iter().collect();
        assert_eq!(distinct.len(), ps.len());
        for p in &ps {
            assert_eq!(p.m(), m);
            let weight: usize = p.nonzero().map(|(i, y)| i * y as usize).sum();
            assert_eq!(weight, m);
        }
    }
}

#[test]
fn partition_function_large() {
    assert_eq!(partition_function(100), BigUint::from(190_569_292u64));
    assert_eq!(
        partition_function(200),
        "3972999029388".parse::<BigUint>().unwrap()
    );
}

#[test]
fn enumeration_order_is_descending_largest_part() {
    for m in 1..=12 {
        let ps = enumerate_partitions(m);
        let parts: Vec<Vec<usize>> = ps.iter().map(MultPartition::parts).collect();
        for w in parts.windows(2) {
            assert!(w[0] > w[1], "m={m}: {:?} then {:?}", w[0], w[1]);
        }
    }
}

#[test]
fn lengths_and_largest_part_bound() {
    assert_eq!(
        enumerate_partitions_with_length(4, 2),
        vec![
            MultPartition::from_parts(&[3, 1]).unwrap(),
            MultPartition::from_parts(&[2, 2]).unwrap()
        ]
    );
    for m in 1..=12 {
        let mut total = 0;
        for r in 0..=m + 1 {
            let ps = enumerate_partitions_with_length(m, r);
            total += ps.len();
            if r == 0 || r > m {
                assert!(ps.is_empty());
                continue;
            }
            let bound = largest_part_bound(m, r).unwrap();
            for p in ps {
                assert_eq!(p.length(), r);
                assert!(p.largest_part().unwrap() <= bound, "m={m} r={r} {p}");
            }
        }
        assert_eq!(total, enumerate_partitions(m).len());
    }
}

#[test]
fn set_partition_counts() {
    for m in 1..=8 {
        let sets = enumerate_set_partitions(m).unwrap();
        assert_eq!(sets.len() as u64, bell(m), "m={m}");
        let distinct: BTreeSet<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(distinct.len(), sets.len());
        let class_total: BigUint = enumerate_partitions(m)
            .iter()
            .map(set_partition_class_size)
            .sum();
        assert_eq!(class_total, BigUint::from(sets.len()), "m={m}");
        for class in enumerate_partitions(m) {
            let count = sets.iter().filter(|s| s.class() == class).count();
            assert_eq!(BigUint::from(count), set_partition_class_size(&class));
        }
    }
    assert_eq!(enumerate_set_partitions(10).unwrap().len(), 115_975);
}

#[test]
fn set_partitions_of_three() {
    let sets = enumerate_set_partitions(3).unwrap();
    let json: Vec<String> = sets
        .iter()
        .map(|s| serde_json::to_string(s).unwrap())
        .collect();
    assert_eq!(
        json,
        vec!["[[1,2,3]]", "[[3],[1,2]]", "[[2],[1,3]]", "[[1],[2,3]]", "[[1],[2],[3]]"]
    );
    let two_one = MultPartition::from_parts(&[2, 1]).unwrap();
    assert_eq!(set_partition_class_size(&two_one), BigUint::from(3u32));
}

#[test]
fn refinement_is_a_partial_order() {
    for m in 1..=5 {
        let sets = enumerate_set_partitions(m).unwrap();
        let rel: Vec<Vec<bool>> = sets
            .iter()
            .map(|a| sets.iter().map(|b| a.refines(b).unwrap()).collect())
            .collect();
        let k = sets.len();
        for i in 0..k {
            assert!(rel[i][i]);
            for j in 0..k {
                if i != j && rel[i][j] {
                    assert!(!rel[j][i], "antisymmetry fails at m={m}");
                }
                for l in 0..k {
                    if rel[i][j] && rel[j][l] {
                        assert!(rel[i][l], "transitivity fails at m={m}");
                    }
                }
            }
        }
        // finest refines all, coarsest is refined by all
        let finest = sets.last().unwrap();
        let coarsest = &sets[0];
        assert!(sets.iter().all(|s| finest.refines(s).unwrap()));
        assert!(sets.iter().all(|s| s.refines(coarsest).unwrap()));
    }
}
