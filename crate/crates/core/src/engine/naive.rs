use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{EvalConfig, Evaluation, OpCounts, RecurrentSumSpec};
use crate::arith::Rational;
use crate::error::{RecsumError, Result};
use crate::special::binomial;

/// Direct enumeration of every tuple `q <= N_1 <= ... <= N_m <= n`, with the
/// guard taken from the environment.
pub fn eval_naive(spec: &RecurrentSumSpec) -> Result<Evaluation> {
    eval_naive_with(spec, &EvalConfig::from_env()?)
}

/// Direct enumeration of every tuple `q <= N_1 <= ... <= N_m <= n`.
///
/// Fails with a resource error before doing any work when the tuple count
/// `C(n-q+m, m)` exceeds the configured guard. Each tuple's product is built
/// from the shared prefix product of its smaller indices.
pub fn eval_naive_with(spec: &RecurrentSumSpec, config: &EvalConfig) -> Result<Evaluation> {
    spec.validate()?;
    if spec.m == 0 {
        return Ok(Evaluation {
            value: Rational::one(),
            counts: OpCounts {
                terms_touched: 1,
                ..OpCounts::default()
            },
        });
    }
    let tuples = binomial(spec.width() as u64 - 1 + spec.m as u64, spec.m as u64);
    if tuples > BigUint::from(config.naive_guard) {
        return Err(RecsumError::Resource {
            what: "naive enumeration".into(),
            required: format!("{tuples} tuples"),
            limit: config.naive_guard.to_string(),
        });
    }
    let table = spec.table()?;

    // Clear denominators row by row so the enumeration runs over integers.
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(table.len());
    for row in &table {
        let d = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(
            row.iter()
                .map(|v| v.numer() * (&d / v.denom()))
                .collect(),
        );
        scale *= d;
    }

    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    let mut counts = OpCounts::default();
    let mut total = None;
    if let Some(small) = small {
        let mut acc = 0i128;
        if walk_small(&small, 0, 0, 1, &mut acc, &mut counts).is_some() {
            total = Some(BigInt::from(acc));
        } else {
            counts = OpCounts::default();
        }
    }
    let total = match total {
        Some(t) => t,
        None => {
            let mut acc = BigInt::zero();
            walk_big(&rows, 0, 0, &BigInt::one(), &mut acc, &mut counts);
            acc
        }
    };
    Ok(Evaluation {
        value: Rational::new(total, scale)?,
        counts,
    })
}

/// Returns `None` on `i128` overflow.
fn walk_small(
    rows: &[Vec<i128>],
    k: usize,
    lo: usize,
    prefix: i128,
    acc: &mut i128,
    counts: &mut OpCounts,
) -> Option<()> {
    let last = k + 1 == rows.len();
    for (idx, &a) in rows[k].iter().enumerate().skip(lo) {
        let p = prefix.checked_mul(a)?;
        counts.ring_ops += 1;
        if last {
            *acc = acc.checked_add(p)?;
            counts.ring_ops += 1;
            counts.terms_touched += 1;
        } else {
            walk_small(rows, k + 1, idx, p, acc, counts)?;
        }
    }
    Some(())
}

fn walk_big(
    rows: &[Vec<BigInt>],
    k: usize,
    lo: usize,
    prefix: &BigInt,
    acc: &mut BigInt,
    counts: &mut OpCounts,
) {
    let last = k + 1 == rows.len();
    for (idx, a) in rows[k].iter().enumerate().skip(lo) {
        let p = prefix * a;
        counts.ring_ops += 1;
        if last {
            *acc += p;
            counts.ring_ops += 1;
            counts.terms_touched += 1;
        } else {
            walk_big(rows, k + 1, idx, &p, acc, counts);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::engine::SeqSpec;

    fn run(spec: &RecurrentSumSpec) -> Evaluation {
        eval_naive_with(spec, &EvalConfig::default()).unwrap()
    }

    #[test]
    fn order_zero_is_one() {
        let spec = RecurrentSumSpec::same(0, 5, 1, SeqSpec::power(1)).unwrap();
        assert_eq!(run(&spec).value, q(1, 1));
    }

    #[test]
    fn small_values() {
        let spec = RecurrentSumSpec::same(2, 1, 2, SeqSpec::power(1)).unwrap();
        let e = run(&spec);
        assert_eq!(e.value, q(7, 1));
        assert_eq!(e.counts.terms_touched, 3);
        let spec = RecurrentSumSpec::same(3, 1, 4, SeqSpec::constant(q(1, 1))).unwrap();
        assert_eq!(run(&spec).value, q(20, 1));
        let a = SeqSpec::tabulated(1, vec![q(1, 1), q(2, 1)]);
        let b = SeqSpec::tabulated(1, vec![q(1, 1), q(3, 1)]);
        let spec = RecurrentSumSpec::new(2, 1, 2, vec![a, b]).unwrap();
        assert_eq!(run(&spec).value, q(10, 1));
    }

    #[test]
    fn fractions_and_overflow_fallback() {
        let spec = RecurrentSumSpec::same(2, 1, 3, SeqSpec::power(-1)).unwrap();
        // 1 + 1/2 + 1/3 + 1/4 + 1/6 + 1/9
        assert_eq!(run(&spec).value, q(85, 36));
        let huge = SeqSpec::constant(Rational::from(i64::MAX));
        let spec = RecurrentSumSpec::same(3, 1, 2, huge).unwrap();
        let expected = Rational::from(i64::MAX).powu(3) * q(4, 1);
        assert_eq!(run(&spec).value, expected);
        assert_eq!(run(&spec).counts.terms_touched, 4);
    }

    #[test]
    fn guard() {
        let spec = RecurrentSumSpec::same(6, 1, 30, SeqSpec::power(1)).unwrap();
        let err = eval_naive_with(&spec, &EvalConfig { naive_guard: 1000 }).unwrap_err();
        assert!(matches!(err, RecsumError::Resource { .. }));
        assert_eq!(err.exit_code(), 4);
    }
}
