use serde::Serialize;

use super::{eval_naive_with, EvalConfig, RecurrentSumSpec};
use crate::arith::Rational;
use crate::error::{RecsumError, Result};
use crate::special::IdentityCheck;

/// Both sides of each upper-bound step identity for one spec and pivot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationReport {
    pub checks: Vec<(&'static str, IdentityCheck)>,
}

impl VariationReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.holds())
    }
}

/// Checks the identities relating `R_{k,q,n}` to `R_{k,q,n+1}` for the given
/// spec, with every `R` value computed independently by the naive evaluator.
/// The sequences must be defined at `n + 1`.
///
/// Writing `a_i` for `a_(i)(n+1)` and `R_k(t)` for the sum of the `k`
/// innermost sequences up to `t`:
///
/// * `step`: `R_m(n+1) = sum_{k=0}^{m} (prod_{i=k+1}^{m} a_i) R_k(n)`
/// * `last-factor`: `R_m(n+1) = a_m R_{m-1}(n+1) + R_m(n)` (for `m >= 1`)
/// * `nested`: `H_0 = 1`, `H_k = a_k H_{k-1} + R_k(n)`, and `H_m = R_m(n+1)`
/// * `pivot`: `R_m(n+1) = sum_{k=p+1}^{m} (prod_{i=k+1}^{m} a_i) R_k(n) + (prod_{i=p+1}^{m} a_i) R_p(n+1)`
/// * `nested-pivot`: `H_p = R_p(n+1)`, `H_k = a_k H_{k-1} + R_k(n)` for `k > p`, and `H_m = R_m(n+1)`
pub fn check_variation_identities(spec: &RecurrentSumSpec, p: usize) -> Result<VariationReport> {
    spec.validate()?;
    let m = spec.m;
    if p > m {
        return Err(RecsumError::invalid(format!(
            "pivot p={p} exceeds the order m={m}"
        )));
    }
    let config = EvalConfig::default();
    let r_at = |k: usize, t: i64| -> Result<Rational> {
        Ok(eval_naive_with(&spec.prefix(k).with_upper(t), &config)?.value)
    };
    let n = spec.n;
    let before: Vec<Rational> = (0..=m).map(|k| r_at(k, n)).collect::<Result<_>>()?;
    let after: Vec<Rational> = (0..=m).map(|k| r_at(k, n + 1)).collect::<Result<_>>()?;
    // a[i - 1] = a_(i)(n+1)
    let a: Vec<Rational> = spec
        .seqs
        .iter()
        .map(|s| s.eval(n + 1))
        .collect::<Result<_>>()?;
    let prod = |from: usize, to: usize| -> Rational {
        (from..=to).fold(Rational::one(), |acc, i| acc * &a[i - 1])
    };

    let mut checks = Vec::new();

    let step = (0..=m).map(|k| prod(k + 1, m) * &before[k]).sum();
    checks.push((
        "step",
        IdentityCheck {
            lhs: after[m].clone(),
            rhs: step,
        },
    ));

    if m >= 1 {
        checks.push((
            "last-factor",
            IdentityCheck {
                lhs: after[m].clone(),
                rhs: &a[m - 1] * &after[m - 1] + &before[m],
            },
        ));
    }

    let mut h = before[0].clone();
    for k in 1..=m {
        h = &a[k - 1] * &h + &before[k];
    }
    checks.push((
        "nested",
        IdentityCheck {
            lhs: after[m].clone(),
            rhs: h,
        },
    ));

    let pivot: Rational = (p + 1..=m)
        .map(|k| prod(k + 1, m) * &before[k])
        .sum::<Rational>()
        + prod(p + 1, m) * &after[p];
    checks.push((
        "pivot",
        IdentityCheck {
            lhs: after[m].clone(),
            rhs: pivot,
        },
    ));

    let mut h = after[p].clone();
    for k in p + 1..=m {
        h = &a[k - 1] * &h + &before[k];
    }
    checks.push((
        "nested-pivot",
        IdentityCheck {
            lhs: after[m].clone(),
            rhs: h,
        },
    ));

    Ok(VariationReport { checks })
}
