//! Partition identities relating cycle-type weights, Stirling numbers and
//! binomials. Each checker returns both sides: the left by enumerating
//! partitions, the right from a closed form, so that neither is derived from
//! the other.

use serde::Serialize;

use super::{big, binomial, factorial, stirling_or_zero};
use crate::arith::Rational;
use crate::error::{RecsumError, Result};
use crate::partitions::{enumerate_partitions, enumerate_partitions_with_length, MultPartition};

/// Both sides of an identity, evaluated independently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `prod_i C(y_i, phi_i) / (i^{y_i} y_i!)` for one enumerated partition.
fn binomial_cycle_weight(part: &MultPartition, phi: Option<&MultPartition>) -> Rational {
    let mut w = Rational::one();
    for (i, y) in part.nonzero() {
        let denom = Rational::from(i as u64).powu(y) * big(&factorial(y as usize));
        w = w / denom;
        if let Some(phi) = phi {
            w *= big(&binomial(y as u64, phi.multiplicity(i) as u64));
        }
    }
    if let Some(phi) = phi {
        // parts of phi absent from `part` contribute C(0, phi_i) = 0
        if phi.nonzero().any(|(i, _)| part.multiplicity(i) == 0) {
            return Rational::zero();
        }
    }
    w
}

/// `prod_{i=1}^{bound} 1 / (i^{phi_i} phi_i!)`.
fn phi_product(phi: &MultPartition, bound: usize) -> Rational {
    let mut p = Rational::one();
    for i in 1..=bound {
        let f = phi.multiplicity(i);
        p = p / (Rational::from(i as u64).powu(f) * big(&factorial(f as usize)));
    }
    p
}

/// Sum over length-`r` partitions of `m` of `prod 1/(i^{y_i} y_i!)`, against `[m r] / m!`.
pub fn stirling_partition_sum(m: usize, r: usize) -> Result<IdentityCheck> {
    if r > m {
        return Err(RecsumError::invalid(format!("need r <= m, got m={m}, r={r}")));
    }
    let lhs = enumerate_partitions_with_length(m, r)
        .iter()
        .map(|k| binomial_cycle_weight(k, None))
        .sum();
    let rhs = big(&stirling_or_zero(m as i64, r as i64)) / big(&factorial(m));
    Ok(IdentityCheck { lhs, rhs })
}

/// Sum over all partitions of `m` of `prod 1/(i^{y_i} y_i!)`, against 1.
pub fn reciprocal_partition_sum(m: usize) -> IdentityCheck {
    let lhs = enumerate_partitions(m)
        .iter()
        .map(|k| binomial_cycle_weight(k, None))
        .sum();
    IdentityCheck { lhs, rhs: Rational::one() }
}

/// Sum over length-`r` partitions of `m` of `prod C(y_i, phi_i)/(i^{y_i} y_i!)`, against
/// `[m-phi, r-r_phi] / (m-phi)! * prod 1/(i^{phi_i} phi_i!)` where `phi` is a
/// partition of `phi <= m` with `r_phi` parts.
///
/// The closed-form product is taken both over `i <= m` and over `i <= phi`;
/// the two must agree since `phi_i = 0` beyond `phi`, and a disagreement is
/// reported as an error rather than resolved.
pub fn restricted_binomial_partition_sum(
    m: usize,
    r: usize,
    phi: &MultPartition,
) -> Result<IdentityCheck> {
    let weight = phi.m();
    if weight > m {
        return Err(RecsumError::invalid(format!(
            "phi partitions {weight}, which exceeds m={m}"
        )));
    }
    if r > m {
        return Err(RecsumError::invalid(format!("need r <= m, got m={m}, r={r}")));
    }
    let lhs = enumerate_partitions_with_length(m, r)
        .iter()
        .map(|k| binomial_cycle_weight(k, Some(phi)))
        .sum();
    let upto_m = phi_product(phi, m);
    let upto_phi = phi_product(phi, weight);
    if upto_m != upto_phi {
        return Err(RecsumError::IdentityFailure(format!(
            "product bound disagreement for phi={phi}: {upto_m} vs {upto_phi}"
        )));
    }
    let s = stirling_or_zero((m - weight) as i64, r as i64 - phi.length() as i64);
    let rhs = big(&s) / big(&factorial(m - weight)) * upto_m;
    Ok(IdentityCheck { lhs, rhs })
}

/// Sum over all partitions of `m` of `prod C(y_i, phi_i)/(i^{y_i} y_i!)`, against
/// `prod 1/(i^{phi_i} phi_i!)`.
pub fn binomial_partition_sum(m: usize, phi: &MultPartition) -> Result<IdentityCheck> {
    if phi.m() > m {
        return Err(RecsumError::invalid(format!(
            "phi partitions {}, which exceeds m={m}",
            phi.m()
        )));
    }
    let lhs = enumerate_partitions(m)
        .iter()
        .map(|k| binomial_cycle_weight(k, Some(phi)))
        .sum();
    let rhs = phi_product(phi, phi.m());
    Ok(IdentityCheck { lhs, rhs })
}

/// Sum over partitions of `m` of `prod (1/y_i!) (n/i)^{y_i}`, against the
/// multiset count `C(n+m-1, m)`.
pub fn multiset_count_sum(m: usize, n: u64) -> IdentityCheck {
    let nr = Rational::from(n);
    let lhs = enumerate_partitions(m)
        .iter()
        .map(|k| {
            k.nonzero().fold(Rational::one(), |acc, (i, y)| {
                acc * (&nr / Rational::from(i as u64)).powu(y) / big(&factorial(y as usize))
            })
        })
        .sum();
    let rhs = if m == 0 {
        Rational::one()
    } else {
        big(&binomial(n + m as u64 - 1, m as u64))
    };
    IdentityCheck { lhs, rhs }
}
