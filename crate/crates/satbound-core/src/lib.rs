#![cfg_attr(not(test), no_std)]
//! Sample-size bounds for random-testing coverage saturation.
//!
//! Random testing keeps drawing inputs from a fixed distribution; at some
//! point further draws stop reaching new code and coverage saturates. Because
//! the set of targets a random test set can ever reach is exactly a Boolean
//! conjunction over per-target "covered" variables, the classic finite-space
//! sample bound
//!
//! ```text
//! m >= (ln|H| + ln(1/delta)) / epsilon,    |H_n| = 3^n
//! ```
//!
//! gives an a-priori upper bound on how many tests saturation can take, with
//! no execution or inference required, just the target count. This crate
//! provides that arithmetic plus everything needed to check it empirically:
//!
//! - [`pac`]: the bound, parameter sweeps, and a coupon-collector baseline;
//! - [`spectrum`]: hit spectra (execution × target bit matrices), CSV form,
//!   coverage partitions, saturation curves, column merging;
//! - [`conjunction`]: the elimination learner over spectrum rows;
//! - [`sut`]: synthetic subjects as exact distributions over coverage
//!   profiles, with seeded sampling and exact generalization error;
//! - [`triangle`]: a built-in demo subject with a known dead branch;
//! - [`experiment`]: seeded Monte-Carlo reliability runs and reports.
//!
//! The crate is `no_std` (with `alloc`); file and process concerns live in
//! the companion CLI crate.

extern crate alloc;

pub mod conjunction;
pub mod error;
pub mod experiment;
pub mod pac;
pub mod spectrum;
pub mod sut;
pub mod triangle;

pub use conjunction::{infer, ConjunctionHypothesis};
pub use error::{Error, Result};
pub use experiment::{
    named_size_bounds, named_size_bounds_to_csv, run_reliability, wilson_interval, NamedSizeBound,
    ReliabilityReport, TrialRecord,
};
pub use pac::{
    coupon_collector_expectation, log_hypothesis_space, sample_complexity, sweep_bounds,
    sweep_to_csv, PacParams, SampleBound, SweepRecord,
};
pub use spectrum::{
    saturation_to_csv, CoveragePartition, HitSpectrum, MergedSpectrum, SaturationPoint,
    TargetGroup,
};
pub use sut::{CoverageProfile, GroundTruth, ProfileSampler, SutProfileModel};
pub use triangle::{triangle_model, TRIANGLE_BLOCKS};
