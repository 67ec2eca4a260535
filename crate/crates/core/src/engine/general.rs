use super::{Evaluation, OpCounts, RecurrentSumSpec};
use crate::arith::Rational;
use crate::error::{RecsumError, Result};
use crate::partitions::{enumerate_set_partitions, MAX_SET_PARTITION_M};
use crate::special::factorial;

/// Permutation-symmetrized recurrent sum of distinct sequences,
/// `sum over sigma in S_m of R(a_(sigma(1)), ..., a_(sigma(m)))`, computed as
///
/// ```text
/// sum over set partitions P of {1..m} of prod_{B in P} (|B|-1)! * sum_{N=q}^{n} prod_{h in B} a_(h)(N)
/// ```
///
/// When all sequences coincide this is `m!` times the plain recurrent sum.
/// `terms_touched` counts set partitions.
pub fn eval_general_reduced(spec: &RecurrentSumSpec) -> Result<Evaluation> {
    spec.validate()?;
    let m = spec.m;
    if m == 0 {
        return Ok(Evaluation {
            value: Rational::one(),
            counts: OpCounts {
                terms_touched: 1,
                ..OpCounts::default()
            },
        });
    }
    if m > MAX_SET_PARTITION_M {
        return Err(RecsumError::Resource {
            what: "set partition enumeration".into(),
            required: format!("m={m}"),
            limit: format!("m<={MAX_SET_PARTITION_M}"),
        });
    }
    let table = spec.table()?;
    let width = spec.width();
    let mut counts = OpCounts::default();
    let mut total = Rational::zero();
    for partition in enumerate_set_partitions(m)? {
        let mut term = Rational::one();
        for block in partition.blocks() {
            let mut block_sum = Rational::zero();
            for i in 0..width {
                let mut prod = Rational::one();
                for &h in block {
                    prod *= &table[h - 1][i];
                }
                block_sum += prod;
                counts.ring_ops += block.len() as u64 + 1;
            }
            term *= Rational::from(factorial(block.len() - 1)) * block_sum;
            counts.ring_ops += 2;
        }
        total += term;
        counts.ring_ops += 1;
        counts.terms_touched += 1;
    }
    Ok(Evaluation {
        value: total,
        counts,
    })
}
