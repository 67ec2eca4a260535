//! The recurrent sum evaluated with its summation order rearranged.
//!
//! The standard form runs `N_m` outermost over `q..=n` and each inner index
//! up to the next outer one:
//!
//! ```text
//! sum_{N_m=q}^{n} a_(m) sum_{N_{m-1}=q}^{N_m} a_(m-1) ... sum_{N_1=q}^{N_2} a_(1)
//! ```
//!
//! Each mode below is a separate loop nest over a different bound
//! structure; none of them calls back into the standard-form evaluators.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::RecurrentSumSpec;
use crate::arith::Rational;
use crate::error::{RecsumError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InversionMode {
    /// `sum_{N_1=q}^{n} a_(1) sum_{N_2=N_1}^{n} a_(2) ... sum_{N_m=N_{m-1}}^{n} a_(m)`:
    /// the innermost index becomes the outermost and every bound runs up to `n`.
    Full,
    /// `sum_{N_1=q}^{n} a_(1) sum_{N_m=N_1}^{n} a_(m) sum_{N_{m-1}=N_1}^{N_m} a_(m-1) ... sum_{N_2=N_1}^{N_3} a_(2)`:
    /// only the innermost summation moves to the outside.
    Rotate,
    /// The `p` innermost summations are inverted as in [`InversionMode::Full`],
    /// with `N_{p+1}` (or `n` when `p = m`) in place of `n`; the outer `m - p` keep the standard form.
    PartialInvert(usize),
    /// The `p` innermost summations are rotated as in [`InversionMode::Rotate`],
    /// with `N_{p+1}` (or `n` when `p = m`) in place of `n`; the outer `m - p` keep the standard form.
    PartialRotate(usize),
}

impl fmt::Display for InversionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InversionMode::Full => write!(f, "full"),
            InversionMode::Rotate => write!(f, "rotate"),
            InversionMode::PartialInvert(p) => write!(f, "partial-invert:{p}"),
            InversionMode::PartialRotate(p) => write!(f, "partial-rotate:{p}"),
        }
    }
}

impl FromStr for InversionMode {
    type Err = RecsumError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || RecsumError::invalid(format!("unknown inversion mode {s:?}"));
        match s.split_once(':') {
            None => match s {
                "full" => Ok(InversionMode::Full),
                "rotate" => Ok(InversionMode::Rotate),
                _ => Err(bad()),
            },
            Some((kind, p)) => {
                let p: usize = p.parse().map_err(|_| bad())?;
                match kind {
                    "partial-invert" => Ok(InversionMode::PartialInvert(p)),
                    "partial-rotate" => Ok(InversionMode::PartialRotate(p)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Index-relative view of the value table: `a(k, i)` is `a_(k)(q + i)`.
struct Table(Vec<Vec<Rational>>);

impl Table {
    fn a(&self, k: usize, i: usize) -> &Rational {
        &self.0[k - 1][i]
    }
}

pub fn eval_inverted(spec: &RecurrentSumSpec, mode: InversionMode) -> Result<Rational> {
    spec.validate()?;
    let m = spec.m;
    if let InversionMode::PartialInvert(p) | InversionMode::PartialRotate(p) = mode {
        if p > m {
            return Err(RecsumError::invalid(format!(
                "pivot p={p} exceeds the order m={m}"
            )));
        }
    }
    if m == 0 {
        return Ok(Rational::one());
    }
    let t = Table(spec.table()?);
    let last = spec.width() - 1;
    Ok(match mode {
        InversionMode::Full => full(&t, m, last),
        InversionMode::Rotate => rotate(&t, m, last),
        InversionMode::PartialInvert(p) => standard_outer(&t, m, p, last, &inner_inverted),
        InversionMode::PartialRotate(p) => standard_outer(&t, m, p, last, &inner_rotated),
    })
}

/// Fully inverted order, evaluated from the outermost-written sum inward as
/// suffix sums: `T_{m+1}(i) = 1`, `T_k(i) = sum_{j=i}^{last} a_(k)(j) T_{k+1}(j)`,
/// result `T_1(0)`.
fn full(t: &Table, m: usize, last: usize) -> Rational {
    let mut next = vec![Rational::one(); last + 1];
    for k in (1..=m).rev() {
        let mut cur = vec![Rational::zero(); last + 1];
        let mut running = Rational::zero();
        for i in (0..=last).rev() {
            running += t.a(k, i) * &next[i];
            cur[i] = running.clone();
        }
        next = cur;
    }
    next.swap_remove(0)
}

/// Innermost summation moved outside; the rest stay nested with `N_1` as
/// their common lower bound.
fn rotate(t: &Table, m: usize, last: usize) -> Rational {
    let mut total = Rational::zero();
    for n1 in 0..=last {
        let inner = if m == 1 {
            Rational::one()
        } else {
            let mut s = Rational::zero();
            for nm in n1..=last {
                s += t.a(m, nm) * rotated_chain(t, m - 1, n1, nm);
            }
            s
        };
        total += t.a(1, n1) * inner;
    }
    total
}

/// `sum_{N_k=lo}^{hi} a_(k) sum_{N_{k-1}=lo}^{N_k} a_(k-1) ... sum_{N_2=lo}^{N_3} a_(2)`; 1 when `k < 2`.
fn rotated_chain(t: &Table, k: usize, lo: usize, hi: usize) -> Rational {
    if k < 2 {
        return Rational::one();
    }
    let mut s = Rational::zero();
    for nk in lo..=hi {
        s += t.a(k, nk) * rotated_chain(t, k - 1, lo, nk);
    }
    s
}

/// Outer summations `N_m, ..., N_{p+1}` in standard form; `inner(t, p, upper)`
/// supplies the `p` innermost ones with `upper` standing for `N_{p+1}`.
fn standard_outer(
    t: &Table,
    m: usize,
    p: usize,
    last: usize,
    inner: &dyn Fn(&Table, usize, usize) -> Rational,
) -> Rational {
    fn level(
        t: &Table,
        k: usize,
        p: usize,
        upper: usize,
        inner: &dyn Fn(&Table, usize, usize) -> Rational,
    ) -> Rational {
        if k == p {
            return inner(t, p, upper);
        }
        let mut s = Rational::zero();
        for nk in 0..=upper {
            s += t.a(k, nk) * level(t, k - 1, p, nk, inner);
        }
        s
    }
    level(t, m, p, last, inner)
}

/// `sum_{N_1=q}^{U} a_(1) sum_{N_2=N_1}^{U} a_(2) ... sum_{N_p=N_{p-1}}^{U} a_(p)`.
fn inner_inverted(t: &Table, p: usize, upper: usize) -> Rational {
    fn from(t: &Table, k: usize, p: usize, lo: usize, upper: usize) -> Rational {
        if k > p {
            return Rational::one();
        }
        let mut s = Rational::zero();
        for nk in lo..=upper {
            s += t.a(k, nk) * from(t, k + 1, p, nk, upper);
        }
        s
    }
    from(t, 1, p, 0, upper)
}

/// `sum_{N_1=q}^{U} a_(1) sum_{N_p=N_1}^{U} a_(p) sum_{N_{p-1}=N_1}^{N_p} ... sum_{N_2=N_1}^{N_3} a_(2)`.
fn inner_rotated(t: &Table, p: usize, upper: usize) -> Rational {
    if p == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for n1 in 0..=upper {
        let rest = if p == 1 {
            Rational::one()
        } else {
            let mut s = Rational::zero();
            for np in n1..=upper {
                s += t.a(p, np) * rotated_chain(t, p - 1, n1, np);
            }
            s
        };
        total += t.a(1, n1) * rest;
    }
    total
}
