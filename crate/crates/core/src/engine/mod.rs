//! Recurrent-sum evaluators.
//!
//! * [`eval_naive`] enumerates every non-decreasing index tuple.
//! * [`eval_incremental`] advances the vector `(R_0, ..., R_m)` one upper
//!   bound at a time with the variation update.
//! * [`eval_reduced`] rewrites a same-sequence sum as a partition-indexed
//!   polynomial in the power sums `S_i = sum_N a_N^i`.
//! * [`eval_inverted`] evaluates the sum with its summation order inverted or rotated.
//! * [`eval_general_reduced`] computes the permutation-symmetrized sum for
//!   distinct sequences through set partitions.
//!
//! Sequence lists are innermost first: `seqs[0]` multiplies `N_1`, the
//! smallest index.

mod general;
mod incremental;
mod inversion;
mod naive;
mod reduction;
mod spec;
mod variation;

pub use general::eval_general_reduced;
pub use incremental::eval_incremental;
pub use inversion::{eval_inverted, InversionMode};
pub use naive::{eval_naive, eval_naive_with};
pub use reduction::{
    eval_reduced, expand_reduction, power_sums, reduce_power_sums, ReductionExpansion,
    ReductionTerm,
};
pub use spec::{seq_eval, RecurrentSumSpec, SeqSpec};
pub use variation::{check_variation_identities, VariationReport};

use serde::Serialize;

use crate::arith::Rational;
use crate::error::{RecsumError, Result};

/// Environment variable overriding [`EvalConfig::naive_guard`].
pub const NAIVE_GUARD_ENV: &str = "RECSUM_NAIVE_GUARD";
pub const DEFAULT_NAIVE_GUARD: u64 = 10_000_000;

/// Limits applied before expensive evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    /// Maximum number of index tuples the naive evaluator may enumerate.
    pub naive_guard: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            naive_guard: DEFAULT_NAIVE_GUARD,
        }
    }
}

impl EvalConfig {
    /// Defaults, with the guard taken from `RECSUM_NAIVE_GUARD` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(NAIVE_GUARD_ENV) {
            Ok(v) => {
                let naive_guard = v.trim().parse().map_err(|_| {
                    RecsumError::invalid(format!("{NAIVE_GUARD_ENV}={v:?} is not a count"))
                })?;
                Ok(EvalConfig { naive_guard })
            }
            Err(_) => Ok(EvalConfig::default()),
        }
    }
}

/// Work counters reported by the evaluators.
///
/// `terms_touched` is the method's unit of work: index tuples for naive,
/// update steps for incremental, partition terms for reduced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub terms_touched: u64,
    /// Power-sum accumulations (reduced evaluator only).
    pub power_sum_updates: u64,
    /// Scalar multiplications and additions.
    pub ring_ops: u64,
}

/// A value together with the work it took.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Rational,
    pub counts: OpCounts,
}

/// The evaluators selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Incremental,
    Reduced,
    General,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Incremental => "incremental",
            Method::Reduced => "reduced",
            Method::General => "general",
        }
    }

    pub fn evaluate(self, spec: &RecurrentSumSpec, config: &EvalConfig) -> Result<Evaluation> {
        match self {
            Method::Naive => eval_naive_with(spec, config),
            Method::Incremental => eval_incremental(spec),
            Method::Reduced => eval_reduced(spec),
            Method::General => eval_general_reduced(spec),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = RecsumError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "incremental" => Ok(Method::Incremental),
            "reduced" => Ok(Method::Reduced),
            "general" => Ok(Method::General),
            _ => Err(RecsumError::invalid(format!("unknown method {s:?}"))),
        }
    }
}
