use super::{Evaluation, OpCounts, RecurrentSumSpec};
use crate::arith::Rational;
use crate::error::Result;

/// Evaluates by growing the upper bound one step at a time.
///
/// The state is `R_j = R_{j,q,t}` for `j = 0..=m`, starting from `t = q - 1`
/// where only `R_0 = 1` is nonzero. Each step applies
///
/// ```text
/// R_{j,t} = sum_{k=0}^{j} ( prod_{i=k+1}^{j} a_(i)(t) ) R_{k,t-1}
/// ```
///
/// in place for `j = m, ..., 1`, so `O(m^2)` work per step. `terms_touched`
/// counts steps.
pub fn eval_incremental(spec: &RecurrentSumSpec) -> Result<Evaluation> {
    spec.validate()?;
    let m = spec.m;
    let mut counts = OpCounts::default();
    if m == 0 {
        counts.terms_touched = 1;
        return Ok(Evaluation {
            value: Rational::one(),
            counts,
        });
    }
    let table = spec.table()?;
    let mut r = vec![Rational::zero(); m + 1];
    r[0] = Rational::one();
    for step in 0..spec.width() {
        for j in (1..=m).rev() {
            // k runs downward, so prod picks up a_(j), a_(j-1), ... in turn
            let mut prod = Rational::one();
            let mut acc = r[j].clone();
            for k in (0..j).rev() {
                prod *= &table[k][step];
                acc += &prod * &r[k];
                counts.ring_ops += 3;
            }
            r[j] = acc;
        }
        counts.terms_touched += 1;
    }
    Ok(Evaluation {
        value: r.swap_remove(m),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::engine::SeqSpec;

    #[test]
    fn hand_trace() {
        let spec = RecurrentSumSpec::same(2, 1, 2, SeqSpec::power(1)).unwrap();
        let e = eval_incremental(&spec).unwrap();
        assert_eq!(e.value, q(7, 1));
        assert_eq!(e.counts.terms_touched, 2);
    }

    #[test]
    fn distinct_sequences() {
        let a = SeqSpec::tabulated(1, vec![q(1, 1), q(2, 1)]);
        let b = SeqSpec::tabulated(1, vec![q(1, 1), q(3, 1)]);
        let spec = RecurrentSumSpec::new(2, 1, 2, vec![a, b]).unwrap();
        assert_eq!(eval_incremental(&spec).unwrap().value, q(10, 1));
    }

    #[test]
    fn order_zero_and_one() {
        let spec = RecurrentSumSpec::same(0, 4, 0, SeqSpec::power(1)).unwrap();
        assert_eq!(eval_incremental(&spec).unwrap().value, q(1, 1));
        let spec = RecurrentSumSpec::same(1, -2, 3, SeqSpec::power(1)).unwrap();
        assert_eq!(eval_incremental(&spec).unwrap().value, q(3, 1));
    }
}
