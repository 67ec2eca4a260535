use std::fmt;

use serde::Serialize;

use super::{Evaluation, OpCounts, RecurrentSumSpec};
use crate::arith::{Rational, ValueRing};
use crate::error::{RecsumError, Result};
use crate::partitions::{enumerate_partitions, MultPartition};
use crate::special::factorial;

/// One term `coefficient * prod_i S_i^{powers[i-1]}` of a reduced sum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionTerm {
    pub partition: MultPartition,
    /// `prod_i 1 / (y_i! i^{y_i})`.
    pub coefficient: Rational,
    /// Exponent applied to each power sum; equal to the multiplicities.
    pub powers: Vec<u32>,
}

/// A same-sequence recurrent sum of order `m` written as a polynomial in the
/// power sums `S_1, ..., S_m`, one term per partition of `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionExpansion {
    pub m: usize,
    pub terms: Vec<ReductionTerm>,
}

pub fn expand_reduction(m: usize) -> ReductionExpansion {
    let terms = enumerate_partitions(m)
        .into_iter()
        .map(|partition| {
            let mut coefficient = Rational::one();
            for (i, y) in partition.nonzero() {
                let d = Rational::from(factorial(y as usize)) * Rational::from(i as u64).powu(y);
                coefficient = coefficient / d;
            }
            let powers = partition.multiplicities().to_vec();
            ReductionTerm {
                partition,
                coefficient,
                powers,
            }
        })
        .collect();
    ReductionExpansion { m, terms }
}

/// Evaluates the expansion at `sums[i-1] = S_i` in any value ring.
pub fn reduce_power_sums<T: ValueRing>(expansion: &ReductionExpansion, sums: &[T]) -> Result<T> {
    if sums.len() < expansion.m {
        return Err(RecsumError::invalid(format!(
            "order {} needs {} power sums, got {}",
            expansion.m,
            expansion.m,
            sums.len()
        )));
    }
    let mut total = T::zero();
    for term in &expansion.terms {
        let mut v = T::from_rational(&term.coefficient);
        for (i, &y) in term.powers.iter().enumerate() {
            if y > 0 {
                v = v * sums[i].powu(y);
            }
        }
        total = total + v;
    }
    Ok(total)
}

/// `S_i = sum_{N=q}^{n} a_N^i` for `i = 1..=m`, accumulated in one pass.
pub fn power_sums(values: &[Rational], m: usize) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); m];
    for v in values {
        let mut p = v.clone();
        for (i, s) in sums.iter_mut().enumerate() {
            if i > 0 {
                p *= v;
            }
            *s += &p;
        }
    }
    sums
}

/// Evaluates a same-sequence sum through its partition expansion.
///
/// `terms_touched` counts the `p(m)` partition terms; the `m (n - q + 1)`
/// power-sum accumulations are reported in `power_sum_updates`.
pub fn eval_reduced(spec: &RecurrentSumSpec) -> Result<Evaluation> {
    spec.validate()?;
    let m = spec.m;
    let table = spec.table()?;
    if table.windows(2).any(|w| w[0] != w[1]) {
        return Err(RecsumError::invalid(
            "the reduced evaluator needs one repeated sequence; \
             use the general method for distinct sequences",
        ));
    }
    let expansion = expand_reduction(m);
    let sums = match table.first() {
        Some(values) => power_sums(values, m),
        None => Vec::new(),
    };
    let value = reduce_power_sums(&expansion, &sums)?;
    let updates = (m * spec.width()) as u64;
    let term_ops: u64 = expansion
        .terms
        .iter()
        .map(|t| t.powers.iter().filter(|&&y| y > 0).count() as u64 + 1)
        .sum();
    Ok(Evaluation {
        value,
        counts: OpCounts {
            terms_touched: expansion.terms.len() as u64,
            power_sum_updates: updates,
            ring_ops: 2 * updates + term_ops,
        },
    })
}

impl fmt::Display for ReductionExpansion {
    /// `1/6 * S1^3 + 1/2 * S2*S1 + 1/3 * S3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, term) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", term.coefficient)?;
            let factors: Vec<String> = term
                .powers
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &y)| y > 0)
                .map(|(i, &y)| {
                    if y == 1 {
                        format!("S{}", i + 1)
                    } else {
                        format!("S{}^{}", i + 1, y)
                    }
                })
                .collect();
            if !factors.is_empty() {
                write!(f, " * {}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::engine::SeqSpec;

    fn coefficients(m: usize) -> Vec<Rational> {
        expand_reduction(m)
            .terms
            .into_iter()
            .map(|t| t.coefficient)
            .collect()
    }

    #[test]
    fn small_expansions() {
        assert_eq!(coefficients(0), vec![q(1, 1)]);
        assert_eq!(coefficients(1), vec![q(1, 1)]);
        assert_eq!(coefficients(2), vec![q(1, 2), q(1, 2)]);
        assert_eq!(coefficients(3), vec![q(1, 3), q(1, 2), q(1, 6)]);
        assert_eq!(
            coefficients(4),
            vec![q(1, 4), q(1, 3), q(1, 8), q(1, 4), q(1, 24)]
        );
        assert_eq!(
            expand_reduction(3).to_string(),
            "1/3 * S3 + 1/2 * S2*S1 + 1/6 * S1^3"
        );
    }

    #[test]
    fn matches_hand_value() {
        let spec = RecurrentSumSpec::same(2, 1, 2, SeqSpec::power(1)).unwrap();
        let e = eval_reduced(&spec).unwrap();
        assert_eq!(e.value, q(7, 1));
        assert_eq!(e.counts.terms_touched, 2);
        assert_eq!(e.counts.power_sum_updates, 4);
        assert_eq!(power_sums(&[q(1, 1), q(2, 1)], 2), vec![q(3, 1), q(5, 1)]);
    }

    #[test]
    fn rejects_distinct_sequences() {
        let spec = RecurrentSumSpec::new(2, 1, 2, vec![SeqSpec::power(1), SeqSpec::power(2)])
            .unwrap();
        assert!(matches!(
            eval_reduced(&spec),
            Err(RecsumError::InvalidInput(_))
        ));
    }

    #[test]
    fn order_zero() {
        let spec = RecurrentSumSpec::same(0, 3, 1, SeqSpec::power(1)).unwrap();
        let e = eval_reduced(&spec).unwrap();
        assert_eq!(e.value, q(1, 1));
        assert_eq!(e.counts.terms_touched, 1);
    }
}
