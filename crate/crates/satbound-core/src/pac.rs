//! Closed-form sample-size mathematics.
//!
//! For a finite hypothesis space `H`, drawing
//!
//! ```text
//! m >= (ln|H| + ln(1/delta)) / epsilon
//! ```
//!
//! i.i.d. examples guarantees, with probability at least `1 - delta`, that any
//! consistent hypothesis has generalization error at most `epsilon`. Coverage
//! saturation instantiates this with the Boolean-conjunction space over `n`
//! targets, `|H_n| = 3^n` (each target retained positively, negatively, or
//! dropped), so `ln|H| = n ln 3` and the bound is affine in `n`.
//!
//! Everything here works in log space: `3^n` itself overflows 64-bit integers
//! past `n = 40`, and subject sizes run into the hundreds.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Natural log of 3, the per-target factor of the hypothesis space.
pub const LN_3: f64 = 1.098_612_288_668_109_8;

/// Accuracy/confidence pair `(epsilon, delta)` governing every bound.
///
/// Both values must lie in the open interval `(0, 1)`; the endpoints are
/// rejected rather than clamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PacParamsWire")]
pub struct PacParams {
    epsilon: f64,
    delta: f64,
}

#[derive(Deserialize)]
struct PacParamsWire {
    epsilon: f64,
    delta: f64,
}

impl TryFrom<PacParamsWire> for PacParams {
    type Error = Error;

    fn try_from(wire: PacParamsWire) -> Result<Self> {
        PacParams::new(wire.epsilon, wire.delta)
    }
}

impl PacParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidDelta(delta));
        }
        Ok(Self { epsilon, delta })
    }

    /// Maximum tolerated generalization error.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Maximum tolerated failure probability.
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// A computed sample-size bound.
///
/// `raw` is the fractional right-hand side of the bound; `tests` is its
/// ceiling, the smallest whole test count satisfying it. Callers pick which
/// form they need; display surfaces show both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBound {
    pub raw: f64,
    pub tests: u64,
    pub n_targets: u64,
    pub params: PacParams,
}

/// Natural log of the conjunction hypothesis-space size over `n_targets`
/// variables, i.e. `n ln 3`. The space itself is never materialized.
pub fn log_hypothesis_space(n_targets: u64) -> f64 {
    n_targets as f64 * LN_3
}

/// Upper bound on the number of random tests needed to reach coverage
/// saturation for a subject with `n_targets` coverage targets.
pub fn sample_complexity(n_targets: u64, params: PacParams) -> SampleBound {
    let raw = (log_hypothesis_space(n_targets) + libm::log(1.0 / params.delta())) / params.epsilon();
    SampleBound {
        raw,
        tests: libm::ceil(raw) as u64,
        n_targets,
        params,
    }
}

/// Expected draws to collect all `k` coupons: `k * H_k`.
///
/// Comparison baseline only. It is a *lower* bound on the tests needed to
/// meet `k` objectives, and is valid only when the objectives are disjoint
/// (one draw satisfies at most one objective), which coverage targets are not.
pub fn coupon_collector_expectation(k_objectives: u64) -> f64 {
    assert!(k_objectives >= 1, "coupon collector needs at least one objective");
    // Sum the harmonic series from the smallest term up.
    let mut harmonic = 0.0;
    for i in (1..=k_objectives).rev() {
        harmonic += 1.0 / i as f64;
    }
    k_objectives as f64 * harmonic
}

/// One row of a bound sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub raw: f64,
    pub tests: u64,
}

/// Bounds over the full Cartesian product of the given parameter grids.
///
/// Row order is deterministic: `n` outermost, then `epsilon`, then `delta`.
/// An invalid `(epsilon, delta)` pair fails the whole sweep, identifying the
/// offending tuple.
pub fn sweep_bounds(n_list: &[u64], epsilons: &[f64], deltas: &[f64]) -> Result<Vec<SweepRecord>> {
    let mut records = Vec::with_capacity(n_list.len() * epsilons.len() * deltas.len());
    for &n in n_list {
        for &epsilon in epsilons {
            for &delta in deltas {
                let params = PacParams::new(epsilon, delta).map_err(|source| Error::SweepEntry {
                    n,
                    epsilon,
                    delta,
                    source: Box::new(source),
                })?;
                let bound = sample_complexity(n, params);
                records.push(SweepRecord {
                    n,
                    epsilon,
                    delta,
                    raw: bound.raw,
                    tests: bound.tests,
                });
            }
        }
    }
    Ok(records)
}

/// Renders sweep records as CSV (`n,epsilon,delta,raw_bound,tests`), reals
/// with four decimal places.
pub fn sweep_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("n,epsilon,delta,raw_bound,tests\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{:.4},{:.4},{:.4},{}",
            r.n, r.epsilon, r.delta, r.raw, r.tests
        );
    }
    out
}
