use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::numeric::{format_significant, pi_approx};
use super::Rational;
use crate::error::{RecsumError, Result};

/// Finite formal sum `sum_k c_k * pi^k` with rational coefficients.
///
/// `pi` is treated as a transcendental symbol: equality is coefficient-wise
/// and no numeric value is involved unless [`PiPoly::eval_numeric`] or
/// [`PiPoly::approx`] is called. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    terms: BTreeMap<u32, Rational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn one() -> Self {
        PiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PiPoly::monomial(c, 0)
    }

    /// `c * pi^exponent`
    pub fn monomial(c: Rational, exponent: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        PiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = PiPoly::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: u32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The single `(exponent, coefficient)` pair, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(u32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// The rational value, if no positive power of `pi` occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exponent: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PiPoly::zero();
        }
        PiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Rational approximation with absolute error below `10^-precision`.
    pub fn approx(&self, precision: u32) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // |d(pi^k)| <= k * 4^(k-1) * |d pi|; pad the working precision by the
        // digit count of sum_k |c_k| k 4^k.
        let mut bound = BigInt::one();
        for (k, c) in self.terms() {
            let ceil_c = c.abs().floor() + 1;
            bound += ceil_c * BigInt::from(k) * num_traits::pow(BigInt::from(4), k as usize);
        }
        let extra = bound.abs().to_str_radix(10).len() as u32;
        let pi = pi_approx(precision + extra + 5);
        let mut acc = Rational::zero();
        let mut pi_pow = Rational::one();
        let mut current = 0u32;
        for (k, c) in self.terms() {
            while current < k {
                pi_pow *= &pi;
                current += 1;
            }
            acc += c * &pi_pow;
        }
        acc
    }

    /// Decimal value rounded to `digits` significant digits.
    pub fn eval_numeric(&self, digits: u32) -> Result<String> {
        if digits == 0 {
            return Err(RecsumError::invalid("digits must be at least 1"));
        }
        if self.is_zero() {
            return Ok("0".to_string());
        }
        if let Some(r) = self.as_rational() {
            return Ok(format_significant(&r, digits));
        }
        // A nonzero polynomial in pi is nonzero, but may be tiny: raise the
        // absolute precision until `digits + 5` guard digits are significant.
        let mut precision = digits + 10;
        loop {
            let v = self.approx(precision);
            if !v.is_zero() {
                let mag = super::numeric::floor_log10(&v.abs());
                if (precision as i64) + mag >= (digits + 5) as i64 {
                    return Ok(format_significant(&v, digits));
                }
            }
            precision *= 2;
        }
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag} * pi")?,
                _ => write!(f, "{mag} * pi^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiPoly({self})")
    }
}

fn parse_term(term: &str) -> Result<(u32, Rational)> {
    let bad = || RecsumError::invalid(format!("not a pi-polynomial term: {term:?}"));
    let (coef, pi_part) = match term.find("pi") {
        None => (term, None),
        Some(pos) => {
            let coef = term[..pos].trim_end_matches('*');
            (coef, Some(&term[pos + 2..]))
        }
    };
    let c = match coef {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        _ => coef.parse::<Rational>().map_err(|_| bad())?,
    };
    let k = match pi_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<u32>()
            .map_err(|_| bad())?,
    };
    Ok((k, c))
}

impl FromStr for PiPoly {
    type Err = RecsumError;

    /// Accepts `c0 + c2*pi^2 + ...` and the display form `127/604800 * pi^8`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(RecsumError::invalid("empty pi-polynomial"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut p = PiPoly::zero();
        for t in terms {
            let (k, c) = parse_term(t)?;
            p.add_term(k, &c);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PiPolyJson {
    terms: BTreeMap<String, Rational>,
}

impl Serialize for PiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PiPolyJson {
            terms: self.terms().map(|(k, c)| (k.to_string(), c.clone())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PiPolyJson::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (k, c) in raw.terms {
            let k: u32 = k.parse().map_err(serde::de::Error::custom)?;
            terms.push((k, c));
        }
        Ok(PiPoly::from_terms(terms))
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(mut self, rhs: PiPoly) -> PiPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, &c);
        }
        self
    }
}

impl Add<&PiPoly> for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        self + (-rhs)
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

impl Mul<&PiPoly> for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (ka, ca) in self.terms() {
            for (kb, cb) in rhs.terms() {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numeric::parse_decimal;
    use crate::arith::rational::q;

    fn pi_pow(c: Rational, k: u32) -> PiPoly {
        PiPoly::monomial(c, k)
    }

    #[test]
    fn monomial_products() {
        let z2 = pi_pow(q(1, 6), 2);
        let z4 = pi_pow(q(1, 90), 4);
        assert_eq!(&z2 * &z2, pi_pow(q(1, 36), 4));
        assert_eq!(&z2 * &z4, pi_pow(q(1, 540), 6));
        let x = PiPoly::from_terms([(0, q(3, 7)), (5, q(-2, 1))]);
        assert_eq!(&PiPoly::one() * &x, x);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = PiPoly::from_terms([(0, q(1, 2)), (2, q(1, 3))]);
        let b = PiPoly::from_terms([(2, q(-1, 3))]);
        let s = a + b;
        assert_eq!(s.len(), 1);
        assert_eq!(s.as_rational(), Some(q(1, 2)));
        assert!((pi_pow(q(1, 1), 2) - pi_pow(q(1, 1), 2)).is_zero());
    }

    #[test]
    fn numeric_values() {
        assert_eq!(pi_pow(q(1, 6), 2).eval_numeric(10).unwrap(), "1.644934067");
        assert_eq!(PiPoly::zero().eval_numeric(7).unwrap(), "0");
        assert_eq!(
            pi_pow(q(127, 604800), 8).eval_numeric(10).unwrap(),
            "1.992466004"
        );
        assert!(PiPoly::one().eval_numeric(0).is_err());
    }

    #[test]
    fn numeric_tiny_value_keeps_significant_digits() {
        // pi^2 - 9.8696 is about 4.4e-6
        let p = PiPoly::from_terms([(2, q(1, 1)), (0, q(-98696, 10000))]);
        let s = p.eval_numeric(6).unwrap();
        assert!(s.starts_with("0.00000440"), "{s}");
    }

    #[test]
    fn numeric_precision_is_nested() {
        let p = PiPoly::from_terms([(0, q(-3, 1)), (2, q(5, 17)), (7, q(1, 1000))]);
        let exact = p.approx(80);
        for d in 1..30u32 {
            let v = parse_decimal(&p.eval_numeric(d).unwrap()).unwrap();
            let e = crate::arith::numeric::floor_log10(&exact.abs());
            let half_ulp = q(1, 2) * Rational::from(10).pow((e - d as i64 + 1) as i32).unwrap();
            assert!((v - &exact).abs() <= half_ulp, "digits {d}");
        }
    }

    #[test]
    fn text_roundtrip() {
        let p: PiPoly = "1/2 + 1/6*pi^2 - 3*pi".parse().unwrap();
        assert_eq!(p.coefficient(0), q(1, 2));
        assert_eq!(p.coefficient(1), q(-3, 1));
        assert_eq!(p.coefficient(2), q(1, 6));
        assert_eq!(p.to_string(), "1/2 - 3 * pi + 1/6 * pi^2");
        assert_eq!(p.to_string().parse::<PiPoly>().unwrap(), p);
        let z8: PiPoly = "127/604800 * pi^8".parse().unwrap();
        assert_eq!(z8, pi_pow(q(127, 604800), 8));
        assert_eq!("-pi^2".parse::<PiPoly>().unwrap(), pi_pow(q(-1, 1), 2));
        assert!("pi^x".parse::<PiPoly>().is_err());
        assert!("".parse::<PiPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let p = pi_pow(q(1, 6), 2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":{"2":"1/6"}}"#);
        let back: PiPoly = serde_json::from_str(r#"{"terms": {"2": "1/6", "0": "0"}}"#).unwrap();
        assert_eq!(back, p);
    }
}
