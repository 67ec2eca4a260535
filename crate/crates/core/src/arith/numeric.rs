//! Decimal rendering of exact values. Only used for display and numeric
//! sanity checks; nothing here feeds back into exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `arctan(1/x)` scaled by `scale`, truncating each term.
fn arctan_inv(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// Rational approximation of pi with absolute error below `10^-digits`.
pub fn pi_approx(digits: u32) -> Rational {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239). Ten guard digits absorb truncation.
    let scale = pow10(digits + 10);
    let pi = arctan_inv(5, &scale) * 16 - arctan_inv(239, &scale) * 4;
    Rational::new(pi, scale).expect("nonzero scale")
}

fn decimal_len(n: &BigInt) -> i64 {
    n.abs().to_str_radix(10).len() as i64
}

/// `floor(log10(v))` for `v > 0`.
pub fn floor_log10(v: &Rational) -> i64 {
    debug_assert!(v.signum() > 0);
    let mut e = decimal_len(v.numer()) - decimal_len(v.denom());
    let ten_pow = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(pow10(e as u32))
        } else {
            Rational::new(BigInt::one(), pow10((-e) as u32)).expect("nonzero")
        }
    };
    while &ten_pow(e) > v {
        e -= 1;
    }
    while &ten_pow(e + 1) <= v {
        e += 1;
    }
    e
}

/// Rounds `v` to `digits` significant decimal digits (half away from zero)
/// and renders it in plain positional notation.
pub fn format_significant(v: &Rational, digits: u32) -> String {
    assert!(digits >= 1, "at least one significant digit");
    if v.is_zero() {
        return "0".to_string();
    }
    let negative = v.is_negative();
    let a = v.abs();
    let mut e = floor_log10(&a);
    let shift = digits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &a * Rational::from_integer(pow10(shift as u32))
    } else {
        a.checked_div(&Rational::from_integer(pow10((-shift) as u32)))
            .expect("nonzero")
    };
    // round half away from zero on a positive value
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = if rem * 2 >= *scaled.denom() { quot + 1 } else { quot };
    if mantissa == pow10(digits) {
        mantissa /= 10;
        e += 1;
    }
    let s = mantissa.to_str_radix(10);
    debug_assert_eq!(s.len(), digits as usize);
    let body = if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= s.len() {
            format!("{}{}", s, "0".repeat(int_len - s.len()))
        } else {
            format!("{}.{}", &s[..int_len], &s[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Parses a plain decimal literal (as produced by [`format_significant`]) exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() || !int.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let v = Rational::new(digits, pow10(frac.len() as u32)).ok()?;
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    #[test]
    fn pi_digits() {
        let pi = pi_approx(60);
        assert_eq!(
            format_significant(&pi, 50),
            "3.1415926535897932384626433832795028841971693993751"
        );
    }

    #[test]
    fn rounding_and_layout() {
        assert_eq!(format_significant(&q(1, 3), 4), "0.3333");
        assert_eq!(format_significant(&q(2, 3), 4), "0.6667");
        assert_eq!(format_significant(&q(-2, 3), 2), "-0.67");
        assert_eq!(format_significant(&q(12345, 1), 3), "12300");
        assert_eq!(format_significant(&q(9999, 1000), 3), "10.0");
        assert_eq!(format_significant(&q(1, 1000), 2), "0.0010");
        assert_eq!(format_significant(&q(5, 2), 1), "3");
    }

    #[test]
    fn log10_boundaries() {
        assert_eq!(floor_log10(&q(1, 1)), 0);
        assert_eq!(floor_log10(&q(999, 1)), 2);
        assert_eq!(floor_log10(&q(1000, 1)), 3);
        assert_eq!(floor_log10(&q(1, 10)), -1);
        assert_eq!(floor_log10(&q(99, 1000)), -2);
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_decimal("1.25"), Some(q(5, 4)));
        assert_eq!(parse_decimal("-0.010"), Some(q(-1, 100)));
        assert_eq!(parse_decimal("12300"), Some(q(12300, 1)));
        assert_eq!(parse_decimal("1e5"), None);
    }
}
