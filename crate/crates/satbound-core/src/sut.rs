//! Synthetic subjects: exact categorical distributions over coverage profiles.
//!
//! A profile model abstracts a subject under random test to the only thing the
//! saturation question needs: the distribution its test generator induces over
//! coverage rows. Because the distribution is explicit, the ground-truth
//! conjunction and the exact generalization error of any hypothesis are both
//! computable, with no estimation involved.
//!
//! Sampling uses a ChaCha8 stream cipher generator: portable, documented
//! output, explicit 64-bit seeding. Draws invert a single uniform variate
//! against the cumulative profile probabilities in file order, so a given
//! `(model, seed)` pair reproduces the same row sequence everywhere.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conjunction::{infer, ConjunctionHypothesis};
use crate::error::{Error, Result};
use crate::spectrum::{validate_target_ids, CoveragePartition, HitSpectrum};

/// Absolute tolerance on the profile probabilities summing to one. Wide
/// enough to absorb decimal-text rounding, tight enough to catch real errors.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

/// One coverage profile: a distinct hit row and its occurrence probability.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageProfile {
    pub hits: Vec<bool>,
    pub prob: f64,
}

/// Exact categorical distribution over coverage profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct SutProfileModel {
    targets: Vec<String>,
    profiles: Vec<CoverageProfile>,
}

/// The target concept for a model: the conjunction over its full support and
/// the matching always/never/sometimes partition.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub conjunction: ConjunctionHypothesis,
    pub relevant: CoveragePartition,
}

#[derive(Serialize, Deserialize)]
struct ModelWire {
    targets: Vec<String>,
    profiles: Vec<ProfileWire>,
}

#[derive(Serialize, Deserialize)]
struct ProfileWire {
    hits: Vec<u8>,
    prob: f64,
}

impl SutProfileModel {
    /// Validates and builds a model: unique non-empty targets, at least one
    /// profile, per-profile dimensions, pairwise-distinct hit vectors,
    /// probabilities in `(0,1]` summing to one within tolerance.
    pub fn new(targets: Vec<String>, profiles: Vec<CoverageProfile>) -> Result<Self> {
        validate_target_ids(&targets)?;
        if profiles.is_empty() {
            return Err(Error::EmptyModel);
        }
        for (i, p) in profiles.iter().enumerate() {
            if p.hits.len() != targets.len() {
                return Err(Error::ProfileDimension {
                    index: i,
                    expected: targets.len(),
                    found: p.hits.len(),
                });
            }
            if !(p.prob > 0.0 && p.prob <= 1.0) {
                return Err(Error::InvalidProbability { index: i, prob: p.prob });
            }
        }
        for i in 0..profiles.len() {
            for j in i + 1..profiles.len() {
                if profiles[i].hits == profiles[j].hits {
                    return Err(Error::DuplicateProfile { first: i, second: j });
                }
            }
        }
        let sum: f64 = profiles.iter().map(|p| p.prob).sum();
        if libm::fabs(sum - 1.0) > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::ProbabilitySum(sum));
        }
        Ok(Self { targets, profiles })
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn profiles(&self) -> &[CoverageProfile] {
        &self.profiles
    }

    pub fn n_targets(&self) -> usize {
        self.targets.len()
    }

    /// Parses the JSON document form:
    /// `{"targets": [...], "profiles": [{"hits": [0/1...], "prob": p}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ModelWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut profiles = Vec::with_capacity(wire.profiles.len());
        for (i, p) in wire.profiles.into_iter().enumerate() {
            let mut hits = Vec::with_capacity(p.hits.len());
            for (j, bit) in p.hits.into_iter().enumerate() {
                match bit {
                    0 => hits.push(false),
                    1 => hits.push(true),
                    value => {
                        return Err(Error::InvalidHitBit {
                            profile: i,
                            index: j,
                            value,
                        })
                    }
                }
            }
            profiles.push(CoverageProfile { hits, prob: p.prob });
        }
        Self::new(wire.targets, profiles)
    }

    /// Renders the JSON document form, hits as 0/1.
    pub fn to_json(&self) -> String {
        let wire = ModelWire {
            targets: self.targets.clone(),
            profiles: self
                .profiles
                .iter()
                .map(|p| ProfileWire {
                    hits: p.hits.iter().map(|&b| u8::from(b)).collect(),
                    prob: p.prob,
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("model serialization cannot fail")
    }

    /// The target concept over the full support: any profile with positive
    /// probability counts, regardless of how much mass it carries.
    pub fn ground_truth(&self) -> GroundTruth {
        let support = HitSpectrum::new(
            self.targets.clone(),
            self.profiles.iter().map(|p| p.hits.clone()).collect(),
        )
        .expect("model invariants imply a valid spectrum");
        GroundTruth {
            conjunction: infer(&support),
            relevant: support.partition().expect("support has at least one row"),
        }
    }

    /// A seeded draw stream over this model's profiles.
    pub fn sampler(&self, seed: u64) -> ProfileSampler<'_> {
        let mut cumulative = Vec::with_capacity(self.profiles.len());
        let mut acc = 0.0;
        for p in &self.profiles {
            acc += p.prob;
            cumulative.push(acc);
        }
        ProfileSampler {
            profiles: &self.profiles,
            cumulative,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Draws `m` i.i.d. execution rows into a spectrum. Deterministic for a
    /// fixed `(model, m, seed)` triple.
    pub fn sample_executions(&self, m: usize, seed: u64) -> HitSpectrum {
        let mut sampler = self.sampler(seed);
        let rows: Vec<Vec<bool>> = (0..m).map(|_| sampler.next_row().to_vec()).collect();
        HitSpectrum::new(self.targets.clone(), rows).expect("profile rows span the targets")
    }

    /// Exact generalization error of `hypothesis` under this model: the total
    /// probability of profiles it misclassifies.
    pub fn generalization_error(&self, hypothesis: &ConjunctionHypothesis) -> Result<f64> {
        if hypothesis.universe() != self.targets {
            return Err(Error::UniverseMismatch);
        }
        let mut loss = 0.0;
        for p in &self.profiles {
            if !hypothesis.evaluate(&p.hits).expect("profile spans the universe") {
                loss += p.prob;
            }
        }
        Ok(loss)
    }
}

/// Streaming sampler over a model's profile distribution. Consecutive calls
/// continue the same ChaCha8 stream, so a prefix of a longer draw equals the
/// shorter draw with the same seed.
pub struct ProfileSampler<'a> {
    profiles: &'a [CoverageProfile],
    cumulative: Vec<f64>,
    rng: ChaCha8Rng,
}

impl<'a> ProfileSampler<'a> {
    /// Draws the next row by cumulative-probability inversion in profile
    /// (file) order.
    pub fn next_row(&mut self) -> &'a [bool] {
        let u: f64 = self.rng.random();
        let idx = self
            .cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(self.profiles.len() - 1);
        &self.profiles[idx].hits
    }
}
