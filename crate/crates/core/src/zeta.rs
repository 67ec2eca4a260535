//! Sums of powers and zeta values at even arguments, obtained from the
//! partition reduction of same-sequence recurrent sums.
//!
//! The recurrent zeta-star value of order `m` and weight `2p` is the infinite
//! recurrent sum of `1/N^{2p}` starting at `N = 1`; at these arguments it is a
//! rational multiple of `pi^{2pm}` and is carried exactly as a [`PiPoly`].

use serde::Serialize;

use crate::arith::numeric::{floor_log10, format_significant};
use crate::arith::{PiPoly, Rational};
use crate::engine::{eval_naive, expand_reduction, reduce_power_sums, RecurrentSumSpec, SeqSpec};
use crate::error::{RecsumError, Result};
use crate::partitions::enumerate_partitions;
use crate::special::{bernoulli, big, binomial, factorial, IdentityCheck};

/// `sum_{N=1}^{n} N^p` from Faulhaber's formula
/// `(1/(p+1)) sum_{j=0}^{p} (-1)^j C(p+1, j) B_j n^{p+1-j}`.
pub fn faulhaber_sum(n: u64, p: u32) -> Rational {
    let nr = Rational::from(n);
    let mut acc = Rational::zero();
    for j in 0..=p {
        let b = bernoulli(j as usize);
        if b.is_zero() {
            continue;
        }
        let mut term = big(&binomial(p as u64 + 1, j as u64)) * b * nr.powu(p + 1 - j);
        if j % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc / Rational::from(p + 1)
}

/// The recurrent sum of order `m` of `N^p` over `1..=n`, from the partition
/// reduction with power sums `S_i = faulhaber_sum(n, i p)`.
pub fn recurrent_faulhaber(m: usize, p: u32, n: u64) -> Rational {
    let sums: Vec<Rational> = (1..=m).map(|i| faulhaber_sum(n, i as u32 * p)).collect();
    reduce_power_sums(&expand_reduction(m), &sums).expect("one power sum per order")
}

fn require_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(RecsumError::invalid(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn two_pow(e: i32) -> Rational {
    Rational::from(2).pow(e).expect("nonzero base")
}

/// `zeta(2m) = (-1)^{m+1} 2^{2m} B_{2m} pi^{2m} / (2 (2m)!)`.
pub fn zeta_even(m: usize) -> Result<PiPoly> {
    require_positive("m", m)?;
    let mut c = two_pow(2 * m as i32 - 1) * bernoulli(2 * m) / big(&factorial(2 * m));
    if m.is_multiple_of(2) {
        c = -c;
    }
    Ok(PiPoly::monomial(c, 2 * m as u32))
}

/// The order-`m` recurrent zeta-star value of `1/N^{2p}`:
/// `sum over partitions of m of prod_i (1/(y_i! i^{y_i})) zeta(2ip)^{y_i}`.
pub fn recurrent_zeta_star_even(m: usize, p: usize) -> Result<PiPoly> {
    require_positive("m", m)?;
    require_positive("p", p)?;
    let zetas: Vec<PiPoly> = (1..=m).map(|i| zeta_even(i * p)).collect::<Result<_>>()?;
    reduce_power_sums(&expand_reduction(m), &zetas)
}

/// `(2 - 2^{-(2m-2)}) zeta(2m)`: the closed form of the order-`m` recurrent
/// zeta-star value of `1/N^2`.
pub fn basel_general(m: usize) -> Result<PiPoly> {
    require_positive("m", m)?;
    let factor = Rational::from(2) - two_pow(2 - 2 * m as i32);
    Ok(zeta_even(m)?.scale(&factor))
}

/// Outcome of the Bernoulli partition identity
/// `sum over partitions of m of prod_i ((-1)^{y_i}/y_i!) (B_{2ip} / (2i (2ip)!))^{y_i}
///  = (2^{1-2m} - 1) B_{2m} / (2m)!`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliPartitionReport {
    pub m: usize,
    pub p: usize,
    pub check: IdentityCheck,
    /// Whether `(-1)^{pm} (2 pi)^{2pm}` times the left side reproduces
    /// [`recurrent_zeta_star_even`]`(m, p)` exactly.
    pub forms_agree: bool,
}

impl BernoulliPartitionReport {
    /// The identity is established only for `p = 1`; other `p` are reported
    /// without a verdict.
    pub fn is_experimental(&self) -> bool {
        self.p != 1
    }

    pub fn verdict(&self) -> Option<bool> {
        if self.is_experimental() {
            None
        } else {
            Some(self.check.holds() && self.forms_agree)
        }
    }
}

pub fn bernoulli_partition_identity(m: usize, p: usize) -> Result<BernoulliPartitionReport> {
    require_positive("m", m)?;
    require_positive("p", p)?;
    let mut lhs = Rational::zero();
    for part in enumerate_partitions(m) {
        let mut term = Rational::one();
        for (i, y) in part.nonzero() {
            let base = bernoulli(2 * i * p)
                / (Rational::from(2 * i as u64) * big(&factorial(2 * i * p)));
            term *= base.powu(y) / big(&factorial(y as usize));
            if y % 2 == 1 {
                term = -term;
            }
        }
        lhs += term;
    }
    let rhs = (two_pow(1 - 2 * m as i32) - Rational::one()) * bernoulli(2 * m)
        / big(&factorial(2 * m));

    let weight = (2 * p * m) as u32;
    let mut c = Rational::from(2).powu(weight) * &lhs;
    if (p * m) % 2 == 1 {
        c = -c;
    }
    let sign_factored = PiPoly::monomial(c, weight);
    let forms_agree = sign_factored == recurrent_zeta_star_even(m, p)?;
    Ok(BernoulliPartitionReport {
        m,
        p,
        check: IdentityCheck { lhs, rhs },
        forms_agree,
    })
}

/// Finite truncation of a recurrent zeta-star value against its closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationReport {
    pub n: u64,
    /// The recurrent sum over `1..=n`.
    pub partial: Rational,
    pub target: PiPoly,
    /// `|partial - target|` to 15 significant digits.
    pub abs_error: String,
}

/// Digits reported in [`TruncationReport::abs_error`].
pub const ABS_ERROR_DIGITS: u32 = 15;

/// Compares the recurrent sum of `1/N^{2p}` over `1..=n` (by direct
/// enumeration, subject to the naive guard) with its limit.
pub fn truncated_zeta_star(m: usize, p: usize, n: u64) -> Result<TruncationReport> {
    require_positive("m", m)?;
    require_positive("p", p)?;
    require_positive("n", n as usize)?;
    let exponent = -2 * i32::try_from(p).map_err(|_| RecsumError::invalid("p too large"))?;
    let spec = RecurrentSumSpec::same(m, 1, n as i64, SeqSpec::power(exponent))?;
    let partial = eval_naive(&spec)?.value;
    let target = recurrent_zeta_star_even(m, p)?;
    Ok(TruncationReport {
        n,
        abs_error: abs_difference(&partial, &target),
        partial,
        target,
    })
}

/// `|r - x|` to [`ABS_ERROR_DIGITS`] significant digits; `x` has a `pi` term,
/// so the difference is nonzero and precision is raised until it resolves.
fn abs_difference(r: &Rational, x: &PiPoly) -> String {
    if let Some(c) = x.as_rational() {
        return format_significant(&(r - &c).abs(), ABS_ERROR_DIGITS);
    }
    let mut precision = 40u32;
    loop {
        let d = (r - &x.approx(precision)).abs();
        if !d.is_zero() && floor_log10(&d) > -(precision as i64) + ABS_ERROR_DIGITS as i64 + 5 {
            return format_significant(&d, ABS_ERROR_DIGITS);
        }
        precision *= 2;
    }
}

/// One row of the generalized Basel table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselRow {
    pub m: usize,
    pub value: PiPoly,
    pub decimal: String,
}

/// Significant digits of [`BaselRow::decimal`].
pub const BASEL_DIGITS: u32 = 12;

/// The closed forms `basel_general(m)` for `m = 1..=max_m`.
///
/// Checks that every value lies in `[1, 2)` and that the distance to 2 shrinks
/// strictly with `m`; a violation is an identity failure.
pub fn basel_limit_table(max_m: usize) -> Result<Vec<BaselRow>> {
    require_positive("max_m", max_m)?;
    let precision = 30 + 2 * max_m as u32;
    let two = Rational::from(2);
    let mut rows = Vec::with_capacity(max_m);
    let mut last_gap: Option<Rational> = None;
    for m in 1..=max_m {
        let value = basel_general(m)?;
        let v = value.approx(precision);
        if v < Rational::one() || v >= two {
            return Err(RecsumError::IdentityFailure(format!(
                "value at m={m} is {v}, outside [1, 2)"
            )));
        }
        let gap = &two - &v;
        if let Some(prev) = &last_gap {
            if &gap >= prev {
                return Err(RecsumError::IdentityFailure(format!(
                    "distance to 2 does not shrink at m={m}"
                )));
            }
        }
        last_gap = Some(gap);
        rows.push(BaselRow {
            m,
            decimal: value.eval_numeric(BASEL_DIGITS)?,
            value,
        });
    }
    Ok(rows)
}

/// `1 + sum_{m=1}^{max_m} basel_general(m)`, the partial sum of the series of
/// generalized Basel values with the order-0 term equal to 1.
pub fn basel_partial_sum(max_m: usize) -> Result<PiPoly> {
    let mut total = PiPoly::one();
    for m in 1..=max_m {
        total = total + basel_general(m)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn faulhaber_small() {
        assert_eq!(faulhaber_sum(4, 1), q(10, 1));
        assert_eq!(faulhaber_sum(7, 0), q(7, 1));
        assert_eq!(faulhaber_sum(3, 2), q(14, 1));
        assert_eq!(faulhaber_sum(0, 3), q(0, 1));
    }

    #[test]
    fn recurrent_faulhaber_small() {
        // tuples (1,1),(1,2),(2,2) of N_1 N_2
        assert_eq!(recurrent_faulhaber(2, 1, 2), q(7, 1));
        assert_eq!(recurrent_faulhaber(1, 2, 3), q(14, 1));
    }

    #[test]
    fn zeta_table() {
        assert_eq!(zeta_even(1).unwrap(), PiPoly::monomial(q(1, 6), 2));
        assert_eq!(zeta_even(2).unwrap(), PiPoly::monomial(q(1, 90), 4));
        assert_eq!(zeta_even(4).unwrap(), PiPoly::monomial(q(1, 9450), 8));
        assert_eq!(
            zeta_even(6).unwrap(),
            PiPoly::monomial(q(691, 638_512_875), 12)
        );
        assert!(zeta_even(0).is_err());
    }

    #[test]
    fn star_values() {
        assert_eq!(
            recurrent_zeta_star_even(4, 1).unwrap(),
            PiPoly::monomial(q(127, 604_800), 8)
        );
        assert_eq!(
            recurrent_zeta_star_even(2, 1).unwrap(),
            PiPoly::monomial(q(7, 360), 4)
        );
        assert_eq!(recurrent_zeta_star_even(1, 3).unwrap(), zeta_even(3).unwrap());
        assert_eq!(basel_general(1).unwrap(), zeta_even(1).unwrap());
        assert_eq!(basel_general(4).unwrap(), recurrent_zeta_star_even(4, 1).unwrap());
    }

    #[test]
    fn bernoulli_identity_first_order() {
        let r = bernoulli_partition_identity(1, 1).unwrap();
        assert_eq!(r.check.lhs, q(-1, 24));
        assert_eq!(r.check.rhs, q(-1, 24));
        assert_eq!(r.verdict(), Some(true));
        let r = bernoulli_partition_identity(2, 2).unwrap();
        assert!(r.is_experimental());
        assert_eq!(r.verdict(), None);
        assert!(r.forms_agree);
    }

    #[test]
    fn truncation() {
        let r = truncated_zeta_star(1, 1, 10).unwrap();
        // pi^2/6 - H_10^(2) = 0.0951663357...
        assert!(r.abs_error.starts_with("0.095166335"), "{}", r.abs_error);
        assert!(truncated_zeta_star(0, 1, 10).is_err());
    }

    #[test]
    fn basel_rows() {
        let rows = basel_limit_table(4).unwrap();
        assert_eq!(rows[0].decimal, "1.64493406685");
        assert!(rows[3].decimal.starts_with("1.99246600"));
        assert!(basel_limit_table(0).is_err());
    }
}
