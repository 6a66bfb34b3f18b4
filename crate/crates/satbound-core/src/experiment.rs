//! Seeded Monte-Carlo reliability experiments.
//!
//! A reliability run asks, for a given model and `(epsilon, delta)`: if we
//! draw exactly the bounded number of tests `b` and learn a conjunction from
//! them, how often is its exact generalization error within `epsilon`? And
//! how much coverage would a second batch of `b` tests still add?
//!
//! Per trial, one ChaCha8 stream (seeded `base_seed ^ trial_index`) supplies
//! `2b` rows. The hypothesis is learned from the first `b`; the `b`-set is a
//! strict prefix of the `2b`-set, so the coverage delta can only reflect
//! genuinely new coverage. Trials are independent given their derived seeds.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::conjunction::ConjunctionHypothesis;
use crate::error::{Error, Result};
use crate::pac::{sample_complexity, PacParams, SampleBound};
use crate::sut::SutProfileModel;

/// Outcome of a single trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u32,
    pub seed: u64,
    /// Tests drawn for the learning set (the bound's ceiling).
    pub m_used: u64,
    /// Exact generalization error of the learned conjunction.
    pub gen_error: f64,
    /// Distinct targets covered by the first `m_used` tests.
    pub coverage_b: usize,
    /// Distinct targets covered by all `2 * m_used` tests.
    pub coverage_2b: usize,
    /// `(coverage_2b - coverage_b) / n_targets`.
    pub delta_fraction: f64,
}

/// Aggregated reliability run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub model_id: String,
    pub params: PacParams,
    pub bound: SampleBound,
    /// Share of trials with `gen_error <= epsilon`.
    pub success_fraction: f64,
    /// Share of trials with `delta_fraction <= epsilon`.
    pub delta_ok_fraction: f64,
    /// 95% Wilson score interval on `success_fraction`.
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: Vec<TrialRecord>,
}

/// Runs `trials` independent learning trials against `model` at the sample
/// size mandated by `params`. Identical inputs reproduce identical reports.
pub fn run_reliability(
    model: &SutProfileModel,
    model_id: &str,
    params: PacParams,
    trials: u32,
    base_seed: u64,
) -> ReliabilityReport {
    assert!(trials >= 1, "a reliability run needs at least one trial");
    let n = model.n_targets();
    let bound = sample_complexity(n as u64, params);
    let m = bound.tests as usize;

    let mut records = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let seed = base_seed ^ u64::from(t);
        let mut sampler = model.sampler(seed);
        let mut hypothesis =
            ConjunctionHypothesis::initial(model.targets()).expect("model targets are valid");
        let mut covered = alloc::vec![false; n];

        for _ in 0..m {
            let row = sampler.next_row();
            hypothesis.absorb(row);
            mark(&mut covered, row);
        }
        let coverage_b = covered.iter().filter(|&&c| c).count();
        let gen_error = model
            .generalization_error(&hypothesis)
            .expect("hypothesis shares the model universe");

        for _ in 0..m {
            mark(&mut covered, sampler.next_row());
        }
        let coverage_2b = covered.iter().filter(|&&c| c).count();
        let delta_fraction = if n == 0 {
            0.0
        } else {
            (coverage_2b - coverage_b) as f64 / n as f64
        };

        records.push(TrialRecord {
            trial_index: t,
            seed,
            m_used: bound.tests,
            gen_error,
            coverage_b,
            coverage_2b,
            delta_fraction,
        });
    }

    let total = records.len();
    let successes = records
        .iter()
        .filter(|r| r.gen_error <= params.epsilon())
        .count();
    let delta_ok = records
        .iter()
        .filter(|r| r.delta_fraction <= params.epsilon())
        .count();
    let (ci_low, ci_high) = wilson_interval(successes as u64, total as u64);

    ReliabilityReport {
        model_id: model_id.to_string(),
        params,
        bound,
        success_fraction: successes as f64 / total as f64,
        delta_ok_fraction: delta_ok as f64 / total as f64,
        ci_low,
        ci_high,
        trials: records,
    }
}

fn mark(covered: &mut [bool], row: &[bool]) {
    for (c, &hit) in covered.iter_mut().zip(row) {
        *c |= hit;
    }
}

/// 95% Wilson score interval for a binomial proportion. Always contains the
/// point estimate `successes / total`.
pub fn wilson_interval(successes: u64, total: u64) -> (f64, f64) {
    assert!(total >= 1 && successes <= total);
    let z = 1.96;
    let n = total as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Roundoff can push the endpoints a hair outside [0,1] at p = 0 or 1.
    ((center - half).max(0.0), (center + half).min(1.0))
}

impl ReliabilityReport {
    /// JSON document with deterministic field ordering, trial rows last.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

/// Parameters used when checking bounds across a batch of named subject
/// sizes: tolerate 20% coverage error, 90% of the time.
pub const SIZE_CHECK_EPSILON: f64 = 0.2;
pub const SIZE_CHECK_DELTA: f64 = 0.1;

/// Bound for one named subject size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedSizeBound {
    pub name: String,
    pub n_targets: u64,
    pub bound: f64,
}

/// Bounds for a list of `(name, target count)` pairs at the fixed
/// [`SIZE_CHECK_EPSILON`] / [`SIZE_CHECK_DELTA`] configuration.
pub fn named_size_bounds(sizes: &[(String, u64)]) -> Vec<NamedSizeBound> {
    let params = PacParams::new(SIZE_CHECK_EPSILON, SIZE_CHECK_DELTA)
        .expect("fixed configuration is valid");
    sizes
        .iter()
        .map(|(name, n)| NamedSizeBound {
            name: name.clone(),
            n_targets: *n,
            bound: sample_complexity(*n, params).raw,
        })
        .collect()
}

/// Renders named-size bounds as CSV (`name,n,bound`), bounds with two decimal
/// places.
pub fn named_size_bounds_to_csv(rows: &[NamedSizeBound]) -> String {
    let mut out = String::from("name,n,bound\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{:.2}", r.name, r.n_targets, r.bound);
    }
    out
}
