//! Property sweeps that cross-check independent evaluation paths.
//!
//! A suite walks a grid of cases, compares two independently computed values
//! per check and collects the mismatches. Reports are deterministic for a
//! given configuration: random sequences come from per-case streams and
//! failures are sorted by case key.

use std::fmt::{self, Display};
use std::str::FromStr;

use serde::Serialize;

use recsum_core::arith::ValueRing;
use recsum_core::engine::{
    check_variation_identities, eval_general_reduced, eval_incremental, eval_inverted,
    eval_naive_with, eval_reduced, expand_reduction, power_sums, reduce_power_sums, EvalConfig,
    InversionMode, RecurrentSumSpec, SeqSpec,
};
use recsum_core::partitions::enumerate_partitions;
use recsum_core::special::{
    binomial_partition_sum, factorial, multiset_count_sum, reciprocal_partition_sum,
    restricted_binomial_partition_sum, stirling_partition_sum,
};
use recsum_core::zeta::{
    basel_general, basel_limit_table, basel_partial_sum, bernoulli_partition_identity,
    recurrent_faulhaber, recurrent_zeta_star_even,
};
use recsum_core::{Rational, RecsumError, Result};

use crate::rng::{case_rng, random_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Variation,
    Inversion,
    Reduction,
    General,
    PartitionIdentities,
    Faulhaber,
    BaselGeneral,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Variation,
        Suite::Inversion,
        Suite::Reduction,
        Suite::General,
        Suite::PartitionIdentities,
        Suite::Faulhaber,
        Suite::BaselGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Variation => "variation",
            Suite::Inversion => "inversion",
            Suite::Reduction => "reduction",
            Suite::General => "general",
            Suite::PartitionIdentities => "partition-identities",
            Suite::Faulhaber => "faulhaber",
            Suite::BaselGeneral => "basel-general",
        }
    }

    fn id(self) -> u64 {
        self as u64 + 1
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RecsumError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| RecsumError::InvalidInput(format!("unknown suite {s:?}")))
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: Suite,
    /// Largest order `m` in the sweep.
    pub max_m: usize,
    /// Largest number of summation indices `n - q + 1` (or largest `n` where
    /// the lower bound is fixed at 1).
    pub max_n: usize,
    pub seed: u64,
    /// Random sequences drawn per grid point.
    pub samples: usize,
    /// Deliberately corrupt one computation to prove the suite can fail.
    pub poison: bool,
}

impl VerifyConfig {
    pub fn new(suite: Suite, max_m: usize, max_n: usize, seed: u64) -> Self {
        VerifyConfig {
            suite,
            max_m,
            max_n,
            seed,
            samples: 20,
            poison: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<RecurrentSumSpec>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub max_m: usize,
    pub max_n: usize,
    pub samples: usize,
    pub poisoned: bool,
    pub cases_run: u64,
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    /// Informational results that are reported but never asserted.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            3
        }
    }
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (seed {}, max-m {}, max-n {}, samples {}{})",
            self.suite,
            self.seed,
            self.max_m,
            self.max_n,
            self.samples,
            if self.poisoned { ", poisoned" } else { "" }
        )?;
        writeln!(
            f,
            "{} cases, {} checks, {} failures",
            self.cases_run,
            self.checks_run,
            self.failures.len()
        )?;
        for fail in &self.failures {
            writeln!(f, "FAIL {} [{}]: {} != {}", fail.case, fail.check, fail.lhs, fail.rhs)?;
            if let Some(spec) = &fail.spec {
                writeln!(f, "     {spec}")?;
            }
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

struct Collector {
    poison_pending: bool,
    cases: u64,
    checks: u64,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Collector {
    fn new(poison: bool) -> Self {
        Collector {
            poison_pending: poison,
            cases: 0,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn compare<T: ValueRing + Display>(
        &mut self,
        case: &str,
        check: &str,
        spec: Option<&RecurrentSumSpec>,
        lhs: &T,
        mut rhs: T,
    ) {
        self.checks += 1;
        if self.poison_pending {
            rhs = rhs + T::one();
            self.poison_pending = false;
        }
        if *lhs != rhs {
            self.failures.push(Failure {
                case: case.to_string(),
                check: check.to_string(),
                spec: spec.cloned(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Records a boolean outcome that has no pair of values to show.
    fn require(&mut self, case: &str, check: &str, ok: bool, detail: &str) {
        self.compare(
            case,
            check,
            None,
            &Rational::from(u32::from(ok)),
            Rational::one(),
        );
        if !ok {
            if let Some(last) = self.failures.last_mut() {
                last.lhs = detail.to_string();
                last.rhs = "expected to hold".to_string();
            }
        }
    }

    fn error(&mut self, case: &str, check: &str, spec: Option<&RecurrentSumSpec>, e: RecsumError) {
        self.checks += 1;
        self.failures.push(Failure {
            case: case.to_string(),
            check: check.to_string(),
            spec: spec.cloned(),
            lhs: format!("error: {e}"),
            rhs: String::new(),
        });
    }
}

fn naive(spec: &RecurrentSumSpec) -> Result<Rational> {
    Ok(eval_naive_with(spec, &EvalConfig::default())?.value)
}

/// Grid of `(m, q, n, sample)` shared by the random-sequence suites.
fn grid(cfg: &VerifyConfig, min_m: usize) -> Vec<(usize, i64, i64, usize)> {
    let mut out = Vec::new();
    for m in min_m..=cfg.max_m {
        for q in [1i64, 2] {
            for width in 1..=cfg.max_n as i64 {
                for s in 0..cfg.samples {
                    out.push((m, q, q + width - 1, s));
                }
            }
        }
    }
    out
}

fn case_key(m: usize, q: i64, n: i64, s: usize) -> String {
    format!("m={m:02} q={q} n={n:03} s={s:03}")
}

/// `m` random tables over `q..=q+len-1`; all equal when `same` is set.
fn random_seqs(cfg: &VerifyConfig, coords: &[u64], m: usize, q: i64, len: usize, same: bool) -> Vec<SeqSpec> {
    let mut rng = case_rng(cfg.seed, coords);
    if same {
        let seq = random_table(&mut rng, q, len);
        vec![seq; m]
    } else {
        (0..m).map(|_| random_table(&mut rng, q, len)).collect()
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut c = Collector::new(cfg.poison);
    match cfg.suite {
        Suite::Reduction => reduction(cfg, &mut c),
        Suite::Variation => variation(cfg, &mut c),
        Suite::Inversion => inversion(cfg, &mut c),
        Suite::General => general(cfg, &mut c)?,
        Suite::PartitionIdentities => partition_identities(cfg, &mut c)?,
        Suite::Faulhaber => faulhaber(cfg, &mut c),
        Suite::BaselGeneral => basel(cfg, &mut c)?,
    }
    c.failures
        .sort_by(|a, b| (&a.case, &a.check).cmp(&(&b.case, &b.check)));
    Ok(VerifyReport {
        suite: cfg.suite,
        seed: cfg.seed,
        max_m: cfg.max_m,
        max_n: cfg.max_n,
        samples: cfg.samples,
        poisoned: cfg.poison,
        cases_run: c.cases,
        checks_run: c.checks,
        failures: c.failures,
        notes: c.notes,
    })
}

fn coords(suite: Suite, m: usize, q: i64, n: i64, s: usize) -> [u64; 5] {
    [suite.id(), m as u64, q as u64, n as u64, s as u64]
}

fn reduction(cfg: &VerifyConfig, c: &mut Collector) {
    // The poison hook corrupts the first coefficient of every expansion.
    let expansions: Vec<_> = (0..=cfg.max_m)
        .map(|m| {
            let mut e = expand_reduction(m);
            if cfg.poison {
                e.terms[0].coefficient += Rational::one();
            }
            e
        })
        .collect();
    for (m, q, n, s) in grid(cfg, 0) {
        let key = case_key(m, q, n, s);
        let seqs = random_seqs(cfg, &coords(cfg.suite, m, q, n, s), m, q, (n - q + 1) as usize, true);
        let spec = RecurrentSumSpec::new(m, q, n, seqs).expect("valid grid point");
        c.cases += 1;
        let base = match naive(&spec) {
            Ok(v) => v,
            Err(e) => {
                c.error(&key, "naive", Some(&spec), e);
                continue;
            }
        };
        match eval_incremental(&spec) {
            Ok(v) => c.compare(&key, "naive=incremental", Some(&spec), &base, v.value),
            Err(e) => c.error(&key, "incremental", Some(&spec), e),
        }
        let reduced = if cfg.poison {
            let values: Vec<Rational> = match &spec.seqs.first() {
                Some(seq) => (q..=n).map(|i| seq.eval(i).expect("in range")).collect(),
                None => Vec::new(),
            };
            reduce_power_sums(&expansions[m], &power_sums(&values, m))
        } else {
            eval_reduced(&spec).map(|e| e.value)
        };
        match reduced {
            Ok(v) => c.compare(&key, "naive=reduced", Some(&spec), &base, v),
            Err(e) => c.error(&key, "reduced", Some(&spec), e),
        }
    }
    // The poison is applied to the expansions rather than to a comparison.
    c.poison_pending = false;
}

fn variation(cfg: &VerifyConfig, c: &mut Collector) {
    for (m, q, n, s) in grid(cfg, 0) {
        let key = case_key(m, q, n, s);
        // one extra entry: the identities step the upper bound to n + 1
        let seqs = random_seqs(cfg, &coords(cfg.suite, m, q, n, s), m, q, (n - q + 2) as usize, false);
        let spec = RecurrentSumSpec::new(m, q, n, seqs).expect("valid grid point");
        c.cases += 1;
        for p in 0..=m {
            match check_variation_identities(&spec, p) {
                Ok(report) => {
                    for (name, check) in report.checks {
                        let label = format!("{name} p={p}");
                        c.compare(&key, &label, Some(&spec), &check.lhs, check.rhs);
                    }
                }
                Err(e) => c.error(&key, &format!("p={p}"), Some(&spec), e),
            }
        }
    }
}

fn inversion(cfg: &VerifyConfig, c: &mut Collector) {
    for (m, q, n, s) in grid(cfg, 0) {
        let key = case_key(m, q, n, s);
        let seqs = random_seqs(cfg, &coords(cfg.suite, m, q, n, s), m, q, (n - q + 1) as usize, false);
        let spec = RecurrentSumSpec::new(m, q, n, seqs).expect("valid grid point");
        c.cases += 1;
        let base = match naive(&spec) {
            Ok(v) => v,
            Err(e) => {
                c.error(&key, "naive", Some(&spec), e);
                continue;
            }
        };
        let mut modes = vec![InversionMode::Full, InversionMode::Rotate];
        for p in 0..=m {
            modes.push(InversionMode::PartialInvert(p));
            modes.push(InversionMode::PartialRotate(p));
        }
        for mode in modes {
            match eval_inverted(&spec, mode) {
                Ok(v) => c.compare(&key, &mode.to_string(), Some(&spec), &base, v),
                Err(e) => c.error(&key, &mode.to_string(), Some(&spec), e),
            }
        }
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(m - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out
}

fn general(cfg: &VerifyConfig, c: &mut Collector) -> Result<()> {
    for (m, q, n, s) in grid(cfg, 1) {
        let key = case_key(m, q, n, s);
        let len = (n - q + 1) as usize;
        let seqs = random_seqs(cfg, &coords(cfg.suite, m, q, n, s), m, q, len, false);
        let spec = RecurrentSumSpec::new(m, q, n, seqs.clone()).expect("valid grid point");
        c.cases += 1;
        let mut symmetrized = Rational::zero();
        for perm in permutations(m) {
            let permuted = perm.iter().map(|&i| seqs[i].clone()).collect();
            symmetrized += naive(&RecurrentSumSpec::new(m, q, n, permuted)?)?;
        }
        match eval_general_reduced(&spec) {
            Ok(v) => c.compare(&key, "symmetrized", Some(&spec), &symmetrized, v.value),
            Err(e) => c.error(&key, "general", Some(&spec), e),
        }
        let same = RecurrentSumSpec::same(m, q, n, seqs[0].clone())?;
        let scaled = Rational::from(factorial(m)) * eval_reduced(&same)?.value;
        match eval_general_reduced(&same) {
            Ok(v) => c.compare(&key, "same-sequence", Some(&same), &scaled, v.value),
            Err(e) => c.error(&key, "general", Some(&same), e),
        }
    }
    Ok(())
}

fn partition_identities(cfg: &VerifyConfig, c: &mut Collector) -> Result<()> {
    let max_m = cfg.max_m;
    for m in 0..=max_m {
        for r in 0..=m {
            let key = format!("stirling-sum m={m:02} r={r:02}");
            let check = stirling_partition_sum(m, r)?;
            c.cases += 1;
            c.compare(&key, "stirling-sum", None, &check.lhs, check.rhs);
        }
        let key = format!("reciprocal-sum m={m:02}");
        let check = reciprocal_partition_sum(m);
        c.cases += 1;
        c.compare(&key, "reciprocal-sum", None, &check.lhs, check.rhs);

        for w in 0..=m {
            for phi in enumerate_partitions(w) {
                let key = format!("binomial-sum m={m:02} phi={phi}");
                let check = binomial_partition_sum(m, &phi)?;
                c.cases += 1;
                c.compare(&key, "binomial-sum", None, &check.lhs, check.rhs);
                for r in 0..=m {
                    let key = format!("restricted-binomial-sum m={m:02} r={r:02} phi={phi}");
                    c.cases += 1;
                    match restricted_binomial_partition_sum(m, r, &phi) {
                        Ok(check) => c.compare(
                            &key,
                            "restricted-binomial-sum",
                            None,
                            &check.lhs,
                            check.rhs,
                        ),
                        Err(e) => c.error(&key, "restricted-binomial-sum", None, e),
                    }
                }
            }
        }
        for n in 0..=cfg.max_n as u64 {
            let key = format!("multiset-count m={m:02} n={n:03}");
            let check = multiset_count_sum(m, n);
            c.cases += 1;
            c.compare(&key, "multiset-count", None, &check.lhs, check.rhs);
        }
    }
    Ok(())
}

fn faulhaber(cfg: &VerifyConfig, c: &mut Collector) {
    for m in 1..=cfg.max_m {
        for p in 0..=3u32 {
            for n in 1..=cfg.max_n as u64 {
                let key = format!("m={m:02} p={p} n={n:03}");
                c.cases += 1;
                let spec = RecurrentSumSpec::same(m, 1, n as i64, SeqSpec::power(p as i32))
                    .expect("valid bounds");
                let closed = recurrent_faulhaber(m, p, n);
                match naive(&spec) {
                    Ok(v) => c.compare(&key, "faulhaber=naive", Some(&spec), &v, closed),
                    Err(e) => c.error(&key, "naive", Some(&spec), e),
                }
            }
        }
    }
    let r = |v: u64| Rational::from(v);
    for n in 0..=cfg.max_n as u64 {
        let nn = r(n);
        let key = format!("closed-forms n={n:03}");
        c.cases += 1;
        let m2p1 = &nn * (&nn + r(1)) * (&nn + r(2)) * (r(3) * &nn + r(1)) / r(24);
        let m2p2 = &nn
            * (&nn + r(1))
            * (&nn + r(2))
            * (r(2) * &nn + r(1))
            * (r(2) * &nn + r(3))
            * (r(5) * &nn - r(1))
            / r(360);
        let m3p1 = nn.powu(2) * (&nn + r(1)).powu(2) * (&nn + r(2)) * (&nn + r(3)) / r(48);
        c.compare(&key, "m=2 p=1", None, &m2p1, recurrent_faulhaber(2, 1, n));
        c.compare(&key, "m=2 p=2", None, &m2p2, recurrent_faulhaber(2, 2, n));
        c.compare(&key, "m=3 p=1", None, &m3p1, recurrent_faulhaber(3, 1, n));
    }
}

fn basel(cfg: &VerifyConfig, c: &mut Collector) -> Result<()> {
    for m in 1..=cfg.max_m.max(1) {
        let key = format!("m={m:02}");
        c.cases += 1;
        c.compare(
            &key,
            "closed-form",
            None,
            &basel_general(m)?,
            recurrent_zeta_star_even(m, 1)?,
        );
        let report = bernoulli_partition_identity(m, 1)?;
        c.compare(
            &key,
            "bernoulli-partition",
            None,
            &report.check.lhs,
            report.check.rhs,
        );
        c.require(
            &key,
            "sign-factored-form",
            report.forms_agree,
            "sign-factored form disagrees with the partition sum",
        );
        let experimental = bernoulli_partition_identity(m, 2)?;
        c.notes.push(format!(
            "experimental p=2 m={m}: lhs {} rhs {} ({})",
            experimental.check.lhs,
            experimental.check.rhs,
            if experimental.check.holds() { "equal" } else { "differ" }
        ));
    }
    let max_m = cfg.max_m.max(1);
    c.cases += 1;
    match basel_limit_table(max_m) {
        Ok(rows) => c.require(
            "limit-table",
            "approaches 2",
            rows.len() == max_m,
            "incomplete table",
        ),
        Err(e) => c.error("limit-table", "approaches 2", None, e),
    }
    c.cases += 1;
    let partial = basel_partial_sum(max_m)?.approx(40);
    c.require(
        "partial-sum",
        "exceeds max-m + 1",
        partial > Rational::from(max_m as u64 + 1),
        &format!("partial sum {}", partial.to_f64()),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> VerifyConfig {
        VerifyConfig {
            samples: 2,
            ..VerifyConfig::new(suite, 3, 4, 42)
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in Suite::ALL {
            let report = run_verify(&small(suite)).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.cases_run > 0);
        }
    }

    #[test]
    fn poison_is_caught() {
        for suite in Suite::ALL {
            let cfg = VerifyConfig {
                poison: true,
                ..small(suite)
            };
            let report = run_verify(&cfg).unwrap();
            assert!(!report.passed(), "{suite}");
            assert_eq!(report.exit_code(), 3);
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
