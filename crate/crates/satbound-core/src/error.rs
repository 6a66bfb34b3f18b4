//! Error type shared across the crate.

use alloc::boxed::Box;
use alloc::string::String;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("epsilon must lie in (0,1), got {0}")]
    InvalidEpsilon(f64),
    #[error("delta must lie in (0,1), got {0}")]
    InvalidDelta(f64),
    #[error("sweep entry (n={n}, epsilon={epsilon}, delta={delta}): {source}")]
    SweepEntry {
        n: u64,
        epsilon: f64,
        delta: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: cell must be 0 or 1, got {value:?}")]
    InvalidCell {
        line: usize,
        column: usize,
        value: String,
    },
    #[error("duplicate target id {0:?}")]
    DuplicateTarget(String),
    #[error("empty target id at column {0}")]
    EmptyTargetId(usize),
    #[error("spectrum has no rows")]
    EmptySpectrum,
    #[error("row has {found} cells, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hypothesis universe does not match the model's targets")]
    UniverseMismatch,
    #[error("literal {0:?} is not in the universe")]
    UnknownLiteral(String),
    #[error("profile probabilities sum to {0}, expected 1 within 1e-9")]
    ProbabilitySum(f64),
    #[error("profile {index} has probability {prob}, expected a value in (0,1]")]
    InvalidProbability { index: usize, prob: f64 },
    #[error("profiles {first} and {second} have identical hit vectors")]
    DuplicateProfile { first: usize, second: usize },
    #[error("model must define at least one profile")]
    EmptyModel,
    #[error("profile {index} has {found} hits, expected {expected}")]
    ProfileDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("profile {profile}, hit {index}: must be 0 or 1, got {value}")]
    InvalidHitBit {
        profile: usize,
        index: usize,
        value: u8,
    },
    #[error("invalid document: {0}")]
    Json(String),
}
