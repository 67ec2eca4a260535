//! Counts the work each evaluator does on one recurrent sum.

use std::time::Instant;

use serde::Serialize;

use recsum_core::engine::{EvalConfig, Method, RecurrentSumSpec};
use recsum_core::{Rational, RecsumError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchStatus {
    Ok,
    /// The naive tuple count exceeded the guard; nothing was evaluated.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub spec: String,
    pub method: Method,
    pub status: BenchStatus,
    pub terms_touched: u64,
    pub power_sum_updates: u64,
    pub ring_ops: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    /// Informational only; never compared.
    pub wall_time_us: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Runs each method on `spec` and checks that every completed method
/// produced the same value. A mismatch is an identity failure.
pub fn run_bench(
    spec: &RecurrentSumSpec,
    methods: &[Method],
    config: &EvalConfig,
) -> Result<Vec<BenchRecord>> {
    let summary = spec.to_string();
    let mut records = Vec::with_capacity(methods.len());
    for &method in methods {
        let start = Instant::now();
        let outcome = method.evaluate(spec, config);
        let wall_time_us = start.elapsed().as_micros();
        let record = match outcome {
            Ok(e) => BenchRecord {
                spec: summary.clone(),
                method,
                status: BenchStatus::Ok,
                terms_touched: e.counts.terms_touched,
                power_sum_updates: e.counts.power_sum_updates,
                ring_ops: e.counts.ring_ops,
                value: Some(e.value),
                wall_time_us,
                note: None,
            },
            Err(err @ RecsumError::Resource { .. }) if method == Method::Naive => BenchRecord {
                spec: summary.clone(),
                method,
                status: BenchStatus::Skipped,
                terms_touched: 0,
                power_sum_updates: 0,
                ring_ops: 0,
                value: None,
                wall_time_us,
                note: Some(err.to_string()),
            },
            Err(err) => return Err(err),
        };
        records.push(record);
    }
    let mut values = records.iter().filter_map(|r| r.value.as_ref().map(|v| (r.method, v)));
    if let Some((first_method, first)) = values.next() {
        for (method, v) in values {
            if v != first {
                return Err(RecsumError::IdentityFailure(format!(
                    "{} gives {first} but {} gives {v}",
                    first_method.name(),
                    method.name()
                )));
            }
        }
    }
    Ok(records)
}
