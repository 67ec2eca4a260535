use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use recsum::{run_bench, run_verify, BenchStatus, Suite, VerifyConfig};
use recsum_core::engine::{expand_reduction, EvalConfig, Method, RecurrentSumSpec, SeqSpec};
use recsum_core::partitions::{
    enumerate_partitions, enumerate_partitions_with_length, enumerate_set_partitions,
    partition_function,
};
use recsum_core::special::{
    bernoulli, binomial_partition_sum, complete_bell, multiset_count_sum, partial_bell,
    reciprocal_partition_sum, restricted_binomial_partition_sum, stirling_first_unsigned,
    stirling_partition_sum, IdentityCheck,
};
use recsum_core::zeta::{
    basel_limit_table, bernoulli_partition_identity, recurrent_faulhaber,
    recurrent_zeta_star_even, truncated_zeta_star,
};
use recsum_core::{MultPartition, Rational, RecsumError, Result};

// stdout writes ignore errors so a closed pipe ends output quietly
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}
macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

/// Exact recurrent sums, partition identities and even zeta-star values.
///
/// Exit codes: 0 success, 2 invalid input, 3 identity check failed,
/// 4 resource guard exceeded.
#[derive(Parser)]
#[command(name = "recsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of m as multiplicity vectors (or set partitions with --sets)
    Partitions {
        m: usize,
        /// Only partitions with this many parts
        #[arg(long)]
        length: Option<usize>,
        /// Partitions of the set {1..m} instead (m <= 10)
        #[arg(long)]
        sets: bool,
        #[arg(long)]
        json: bool,
    },
    /// Number of partitions p(m)
    Pfunc {
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Unsigned Stirling number of the first kind [m r]
    Stirling {
        m: usize,
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Bernoulli number B_j (B_1 = -1/2)
    Bernoulli {
        j: usize,
        #[arg(long)]
        json: bool,
    },
    /// Partial Bell polynomial B_{m,r}(x), or the complete one when r is omitted
    Bell {
        m: usize,
        r: Option<usize>,
        /// Comma-separated rationals x_1,x_2,...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a recurrent sum
    Eval {
        #[command(flatten)]
        sum: SumArgs,
        #[arg(long, value_enum, default_value = "incremental")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the power-sum expansion of a same-sequence sum of order m
    Reduce {
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recurrent sum of N^p over 1..n via the power-sum expansion
    Faulhaber {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Recurrent zeta-star value of 1/N^(2p) as an exact multiple of a power of pi
    ZetaStar {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Also print a decimal value
        #[arg(long)]
        numeric: bool,
        /// Significant digits for --numeric
        #[arg(long, default_value_t = 20)]
        digits: u32,
        /// Compare with the finite sum over 1..N
        #[arg(long)]
        truncate: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Table of the generalized Basel values for m = 1..max-m
    Basel {
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a partition identity on one instance or on its default sweep
    Check {
        #[arg(long, value_enum)]
        identity: IdentityArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<u64>,
        /// Parts of phi, comma separated (empty for the empty partition)
        #[arg(long)]
        phi: Option<String>,
        /// Exponent for the Bernoulli partition identity (only p = 1 is asserted)
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a randomized cross-check suite
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random sequences per grid point
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Corrupt one computation to confirm the suite detects it
        #[arg(long)]
        poison: bool,
        #[arg(long)]
        json: bool,
    },
    /// Count the work done by each evaluator on one sum
    Bench {
        #[command(flatten)]
        sum: SumArgs,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "naive,incremental,reduced")]
        methods: Vec<MethodArg>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct SumArgs {
    /// Order (number of nested summations)
    #[arg(long)]
    m: usize,
    /// Lower bound
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    q: i64,
    /// Upper bound
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// pow:<e>, const:<r> or tab:<file.json>. One spec is used for every
    /// position; otherwise give m specs, INNERMOST FIRST (the first one
    /// multiplies the smallest index N_1).
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    seq: Vec<String>,
}

impl SumArgs {
    fn spec(&self) -> Result<RecurrentSumSpec> {
        let parsed: Vec<SeqSpec> = self.seq.iter().map(|s| parse_seq(s)).collect::<Result<_>>()?;
        let seqs = if parsed.len() == 1 {
            vec![parsed[0].clone(); self.m]
        } else {
            parsed
        };
        RecurrentSumSpec::new(self.m, self.q, self.n, seqs)
    }
}

fn parse_seq(s: &str) -> Result<SeqSpec> {
    match s.trim().strip_prefix("tab:") {
        Some(path) => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|e| {
                RecsumError::InvalidInput(format!("cannot read sequence table {path}: {e}"))
            })?;
            SeqSpec::tabulated_from_json(&text)
        }
        None => s.parse(),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Incremental,
    Reduced,
    General,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Incremental => Method::Incremental,
            MethodArg::Reduced => Method::Reduced,
            MethodArg::General => Method::General,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Variation,
    Inversion,
    Reduction,
    General,
    PartitionIdentities,
    Faulhaber,
    BaselGeneral,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Variation => Suite::Variation,
            SuiteArg::Inversion => Suite::Inversion,
            SuiteArg::Reduction => Suite::Reduction,
            SuiteArg::General => Suite::General,
            SuiteArg::PartitionIdentities => Suite::PartitionIdentities,
            SuiteArg::Faulhaber => Suite::Faulhaber,
            SuiteArg::BaselGeneral => Suite::BaselGeneral,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    /// Length-r cycle weights sum to [m r]/m!
    #[value(name = "stirling-sum", alias = "lemma4.2")]
    StirlingSum,
    /// All cycle weights of m sum to 1
    #[value(name = "reciprocal-sum", alias = "lemma4.3")]
    ReciprocalSum,
    /// Binomial-weighted length-r cycle weights
    #[value(name = "restricted-binomial-sum", alias = "lemma4.4")]
    RestrictedBinomialSum,
    /// Binomial-weighted cycle weights
    #[value(name = "binomial-sum", alias = "lemma4.5")]
    BinomialSum,
    /// Partition sum equal to the multiset count C(n+m-1, m)
    #[value(name = "multiset-count", alias = "corollary4.2")]
    MultisetCount,
    /// Bernoulli partition sum behind the generalized Basel values
    #[value(name = "bernoulli-partition")]
    BernoulliPartition,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Partitions {
            m,
            length,
            sets,
            json,
        } => {
            if sets {
                let mut ps = enumerate_set_partitions(m)?;
                if let Some(r) = length {
                    ps.retain(|p| p.blocks().len() == r);
                }
                if json {
                    print_json(&ps);
                } else {
                    ps.iter().for_each(|p| outln!("{p}"));
                }
            } else {
                let ps = match length {
                    Some(r) => enumerate_partitions_with_length(m, r),
                    None => enumerate_partitions(m),
                };
                if json {
                    print_json(&ps);
                } else {
                    ps.iter().for_each(|p| outln!("{p}"));
                }
            }
        }
        Command::Pfunc { m, json } => {
            let v = Rational::from(partition_function(m));
            if json {
                print_json(&json!({ "m": m, "value": v }));
            } else {
                outln!("{v}");
            }
        }
        Command::Stirling { m, r, json } => {
            let v = Rational::from(stirling_first_unsigned(m, r)?);
            if json {
                print_json(&json!({ "m": m, "r": r, "value": v }));
            } else {
                outln!("{v}");
            }
        }
        Command::Bernoulli { j, json } => {
            let v = bernoulli(j);
            if json {
                print_json(&json!({ "j": j, "value": v }));
            } else {
                outln!("{v}");
            }
        }
        Command::Bell { m, r, x, json } => {
            let x: Vec<Rational> = x
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse())
                .collect::<Result<_>>()?;
            let v = match r {
                Some(r) => partial_bell(m, r, &x)?,
                None => complete_bell(m, &x)?,
            };
            if json {
                print_json(&json!({ "m": m, "r": r, "value": v }));
            } else {
                outln!("{v}");
            }
        }
        Command::Eval { sum, method, json } => {
            let spec = sum.spec()?;
            let method = Method::from(method);
            let e = method.evaluate(&spec, &EvalConfig::from_env()?)?;
            if json {
                print_json(&json!({
                    "value": e.value,
                    "method": method,
                    "terms_touched": e.counts.terms_touched,
                }));
            } else {
                outln!("{}", e.value);
            }
        }
        Command::Reduce { m, json } => {
            let e = expand_reduction(m);
            if json {
                print_json(&e);
            } else {
                outln!("{e}");
            }
        }
        Command::Faulhaber { m, p, n, json } => {
            let v = recurrent_faulhaber(m, p, n);
            if json {
                print_json(&json!({ "m": m, "p": p, "n": n, "value": v }));
            } else {
                outln!("{v}");
            }
        }
        Command::ZetaStar {
            m,
            p,
            numeric,
            digits,
            truncate,
            json,
        } => {
            let v = recurrent_zeta_star_even(m, p)?;
            let decimal = if numeric {
                Some(v.eval_numeric(digits)?)
            } else {
                None
            };
            let truncation = match truncate {
                Some(n) => Some(truncated_zeta_star(m, p, n)?),
                None => None,
            };
            if json {
                print_json(&json!({
                    "m": m,
                    "p": p,
                    "value": v,
                    "display": v.to_string(),
                    "numeric": decimal,
                    "truncation": truncation,
                }));
            } else {
                outln!("{v}");
                if let Some(d) = decimal {
                    outln!("~ {d}");
                }
                if let Some(t) = truncation {
                    outln!(
                        "partial sum to n={}: {} (|error| = {})",
                        t.n,
                        t.partial.to_f64(),
                        t.abs_error
                    );
                }
            }
        }
        Command::Basel { max_m, json } => {
            let rows = basel_limit_table(max_m)?;
            if json {
                print_json(&json!({ "rows": rows }));
            } else {
                for row in rows {
                    outln!("{:>3}  {:<32}  {}", row.m, row.value.to_string(), row.decimal);
                }
            }
        }
        Command::Check {
            identity,
            m,
            r,
            n,
            phi,
            p,
            json,
        } => return check(identity, m, r, n, phi.as_deref(), p, json),
        Command::Verify {
            suite,
            max_m,
            max_n,
            seed,
            samples,
            poison,
            json,
        } => {
            let cfg = VerifyConfig {
                suite: suite.into(),
                max_m,
                max_n,
                seed,
                samples,
                poison,
            };
            let report = run_verify(&cfg)?;
            if json {
                print_json(&report);
            } else {
                out!("{report}");
            }
            return Ok(report.exit_code());
        }
        Command::Bench { sum, methods, json } => {
            let spec = sum.spec()?;
            let methods: Vec<Method> = methods.into_iter().map(Method::from).collect();
            let records = run_bench(&spec, &methods, &EvalConfig::from_env()?)?;
            if json {
                print_json(&json!({ "spec": spec.to_string(), "records": records }));
            } else {
                outln!("{spec}");
                for rec in records {
                    match rec.status {
                        BenchStatus::Ok => outln!(
                            "{:<12} terms_touched={:<10} power_sum_updates={:<6} ring_ops={:<10} time={}us",
                            rec.method.name(),
                            rec.terms_touched,
                            rec.power_sum_updates,
                            rec.ring_ops,
                            rec.wall_time_us
                        ),
                        BenchStatus::Skipped => outln!(
                            "{:<12} skipped: {}",
                            rec.method.name(),
                            rec.note.unwrap_or_default()
                        ),
                    }
                }
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckCase {
    case: String,
    lhs: Rational,
    rhs: Rational,
    holds: bool,
}

fn parse_phi(text: &str) -> Result<MultPartition> {
    let parts: Vec<usize> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| RecsumError::InvalidInput(format!("bad part {s:?} in --phi")))
        })
        .collect::<Result<_>>()?;
    MultPartition::from_parts(&parts)
}

fn check(
    identity: IdentityArg,
    m: Option<usize>,
    r: Option<usize>,
    n: Option<u64>,
    phi: Option<&str>,
    p: usize,
    json: bool,
) -> Result<i32> {
    let phi = phi.map(parse_phi).transpose()?;
    let ms = |default_max: usize| -> Vec<usize> {
        match m {
            Some(m) => vec![m],
            None => (0..=default_max).collect(),
        }
    };
    let rs = |m: usize| -> Vec<usize> {
        match r {
            Some(r) => vec![r],
            None => (0..=m).collect(),
        }
    };
    let phis = |m: usize| -> Vec<MultPartition> {
        match &phi {
            Some(phi) => vec![phi.clone()],
            None => (0..=m).flat_map(enumerate_partitions).collect(),
        }
    };
    let mut cases: Vec<CheckCase> = Vec::new();
    let mut experimental = false;
    let mut push = |case: String, c: IdentityCheck| {
        let holds = c.holds();
        cases.push(CheckCase {
            case,
            lhs: c.lhs,
            rhs: c.rhs,
            holds,
        });
    };
    match identity {
        IdentityArg::StirlingSum => {
            for m in ms(10) {
                for r in rs(m) {
                    push(format!("m={m} r={r}"), stirling_partition_sum(m, r)?);
                }
            }
        }
        IdentityArg::ReciprocalSum => {
            for m in ms(12) {
                push(format!("m={m}"), reciprocal_partition_sum(m));
            }
        }
        IdentityArg::RestrictedBinomialSum => {
            for m in ms(8) {
                for phi in phis(m) {
                    for r in rs(m) {
                        push(
                            format!("m={m} r={r} phi={phi}"),
                            restricted_binomial_partition_sum(m, r, &phi)?,
                        );
                    }
                }
            }
        }
        IdentityArg::BinomialSum => {
            for m in ms(8) {
                for phi in phis(m) {
                    push(format!("m={m} phi={phi}"), binomial_partition_sum(m, &phi)?);
                }
            }
        }
        IdentityArg::MultisetCount => {
            for m in ms(8) {
                let ns: Vec<u64> = match n {
                    Some(n) => vec![n],
                    None => (0..=8).collect(),
                };
                for n in ns {
                    push(format!("m={m} n={n}"), multiset_count_sum(m, n));
                }
            }
        }
        IdentityArg::BernoulliPartition => {
            experimental = p != 1;
            let range: Vec<usize> = match m {
                Some(m) => vec![m],
                None => (1..=8).collect(),
            };
            for m in range {
                let report = bernoulli_partition_identity(m, p)?;
                let mut c = report.check.clone();
                if !experimental && !report.forms_agree {
                    // surface the disagreement as a failed case
                    c.rhs += Rational::one();
                }
                push(format!("m={m} p={p}"), c);
            }
        }
    }
    let all_hold = cases.iter().all(|c| c.holds);
    if json {
        print_json(&json!({
            "identity": identity.to_possible_value().map(|v| v.get_name().to_string()),
            "experimental": experimental,
            "holds": all_hold,
            "cases": cases,
        }));
    } else {
        for c in &cases {
            let verdict = match (c.holds, experimental) {
                (true, _) => "ok  ",
                (false, true) => "diff",
                (false, false) => "FAIL",
            };
            outln!("{verdict} {}: {} vs {}", c.case, c.lhs, c.rhs);
        }
        if experimental {
            outln!("experimental: reported only, not asserted");
        }
    }
    Ok(if all_hold || experimental { 0 } else { 3 })
}
