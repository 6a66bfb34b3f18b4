//! Elimination learning of Boolean conjunctions over coverage targets.
//!
//! The learner starts from the conjunction of every positive and negative
//! literal (`x_1 ∧ ¬x_1 ∧ … ∧ x_n ∧ ¬x_n`) and, for each observed execution
//! row, deletes every literal the row contradicts: a 0 in column `j` removes
//! `x_j`, a 1 removes `¬x_j`. Literals are only ever removed, so after the
//! first row each target retains at most one literal, and the surviving
//! positive/negative sets are exactly the always/never-covered targets of the
//! training rows. Targets with no surviving literal are unconstrained.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{validate_target_ids, HitSpectrum};

/// A conjunction hypothesis: the sets of retained positive and negative
/// literals over an ordered universe of target ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjunctionHypothesis {
    universe: Vec<String>,
    positive: Vec<bool>,
    negative: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct HypothesisWire {
    positive: Vec<String>,
    negative: Vec<String>,
    universe: Vec<String>,
}

impl ConjunctionHypothesis {
    /// The zero-evidence hypothesis: every literal retained, both positively
    /// and negatively. This is the one state where the positive and negative
    /// sets intersect; any training row makes them disjoint.
    pub fn initial(targets: &[String]) -> Result<Self> {
        validate_target_ids(targets)?;
        Ok(Self {
            universe: targets.to_vec(),
            positive: alloc::vec![true; targets.len()],
            negative: alloc::vec![true; targets.len()],
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    /// Retained positive literals, in universe order.
    pub fn positive_ids(&self) -> Vec<&str> {
        self.ids_where(&self.positive)
    }

    /// Retained negative literals, in universe order.
    pub fn negative_ids(&self) -> Vec<&str> {
        self.ids_where(&self.negative)
    }

    fn ids_where(&self, flags: &[bool]) -> Vec<&str> {
        self.universe
            .iter()
            .zip(flags)
            .filter(|(_, &kept)| kept)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// Total retained literals (positive plus negative).
    pub fn literal_count(&self) -> usize {
        self.positive.iter().filter(|&&b| b).count() + self.negative.iter().filter(|&&b| b).count()
    }

    /// One elimination step: returns the hypothesis with every literal
    /// contradicted by `row` removed. Nothing is ever added back.
    pub fn update(&self, row: &[bool]) -> Result<Self> {
        self.check_row(row)?;
        let mut next = self.clone();
        next.absorb(row);
        Ok(next)
    }

    /// In-place elimination step; callers guarantee `row` spans the universe.
    pub(crate) fn absorb(&mut self, row: &[bool]) {
        debug_assert_eq!(row.len(), self.universe.len());
        for (j, &hit) in row.iter().enumerate() {
            if hit {
                self.negative[j] = false;
            } else {
                self.positive[j] = false;
            }
        }
    }

    /// Whether `row` satisfies the conjunction: 1 on every retained positive
    /// literal and 0 on every retained negative one. Unconstrained targets
    /// accept either bit.
    pub fn evaluate(&self, row: &[bool]) -> Result<bool> {
        self.check_row(row)?;
        Ok(self
            .positive
            .iter()
            .zip(&self.negative)
            .zip(row)
            .all(|((&pos, &neg), &hit)| (!pos || hit) && (!neg || !hit)))
    }

    /// Misclassified fraction of the spectrum's rows (all rows are genuine
    /// draws, so a row is misclassified iff the conjunction rejects it).
    pub fn empirical_error(&self, spectrum: &HitSpectrum) -> Result<f64> {
        if spectrum.targets() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        if spectrum.n_rows() == 0 {
            return Err(Error::EmptySpectrum);
        }
        let misses = spectrum
            .rows()
            .iter()
            .filter(|row| !self.evaluate(row).expect("row spans the universe"))
            .count();
        Ok(misses as f64 / spectrum.n_rows() as f64)
    }

    fn check_row(&self, row: &[bool]) -> Result<()> {
        if row.len() != self.universe.len() {
            return Err(Error::DimensionMismatch {
                expected: self.universe.len(),
                found: row.len(),
            });
        }
        Ok(())
    }

    /// JSON document `{"positive": [...], "negative": [...], "universe": [...]}`,
    /// arrays in universe order.
    pub fn to_json(&self) -> String {
        let wire = HypothesisWire {
            positive: self.positive_ids().iter().map(|s| s.to_string()).collect(),
            negative: self.negative_ids().iter().map(|s| s.to_string()).collect(),
            universe: self.universe.clone(),
        };
        serde_json::to_string(&wire).expect("hypothesis serialization cannot fail")
    }

    /// Parses the JSON document form. Literal sets may arrive in any order;
    /// they are normalized back to universe order.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: HypothesisWire =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        validate_target_ids(&wire.universe)?;
        let mut hypothesis = Self {
            universe: wire.universe,
            positive: alloc::vec![false; 0],
            negative: alloc::vec![false; 0],
        };
        hypothesis.positive = flags_for(&hypothesis.universe, &wire.positive)?;
        hypothesis.negative = flags_for(&hypothesis.universe, &wire.negative)?;
        Ok(hypothesis)
    }
}

fn flags_for(universe: &[String], ids: &[String]) -> Result<Vec<bool>> {
    let mut flags = alloc::vec![false; universe.len()];
    for id in ids {
        let j = universe
            .iter()
            .position(|u| u == id)
            .ok_or_else(|| Error::UnknownLiteral(id.clone()))?;
        flags[j] = true;
    }
    Ok(flags)
}

/// Batch inference: folds [`ConjunctionHypothesis::update`] over every row of
/// the spectrum, starting from the initial hypothesis. With at least one row,
/// the result's positive/negative sets equal the spectrum partition's
/// always/never sets.
pub fn infer(spectrum: &HitSpectrum) -> ConjunctionHypothesis {
    let mut h = ConjunctionHypothesis::initial(spectrum.targets())
        .expect("spectrum targets are already validated");
    for row in spectrum.rows() {
        h.absorb(row);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn initial_retains_every_literal_twice() {
        let h = ConjunctionHypothesis::initial(&ids(&["a", "b"])).unwrap();
        assert_eq!(h.positive_ids(), vec!["a", "b"]);
        assert_eq!(h.negative_ids(), vec!["a", "b"]);
        assert_eq!(h.literal_count(), 4);
    }

    #[test]
    fn initial_of_empty_universe() {
        let h = ConjunctionHypothesis::initial(&[]).unwrap();
        assert_eq!(h.literal_count(), 0);
        // The empty conjunction accepts everything.
        assert!(h.evaluate(&[]).unwrap());
    }

    #[test]
    fn initial_rejects_duplicates() {
        assert_eq!(
            ConjunctionHypothesis::initial(&ids(&["a", "a"])).unwrap_err(),
            Error::DuplicateTarget("a".to_string())
        );
    }

    #[test]
    fn update_deletes_contradicted_literals() {
        let h = ConjunctionHypothesis::initial(&ids(&["a", "b", "c"])).unwrap();
        let h = h.update(&[true, false, true]).unwrap();
        assert_eq!(h.positive_ids(), vec!["a", "c"]);
        assert_eq!(h.negative_ids(), vec!["b"]);
        let h = h.update(&[true, true, true]).unwrap();
        assert_eq!(h.positive_ids(), vec!["a", "c"]);
        assert!(h.negative_ids().is_empty());
    }

    #[test]
    fn update_checks_row_length() {
        let h = ConjunctionHypothesis::initial(&ids(&["a", "b"])).unwrap();
        assert_eq!(
            h.update(&[true]).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn infer_on_empty_spectrum_is_initial() {
        let s = HitSpectrum::empty(ids(&["a"])).unwrap();
        let h = infer(&s);
        assert_eq!(h.positive_ids(), vec!["a"]);
        assert_eq!(h.negative_ids(), vec!["a"]);
    }

    #[test]
    fn infer_matches_fold_of_updates() {
        let s = HitSpectrum::new(
            ids(&["t1", "t2", "t3"]),
            vec![vec![true, false, true], vec![true, true, true]],
        )
        .unwrap();
        let h = infer(&s);
        assert_eq!(h.positive_ids(), vec!["t1", "t3"]);
        assert!(h.negative_ids().is_empty());

        let mut folded = ConjunctionHypothesis::initial(s.targets()).unwrap();
        for row in s.rows() {
            folded = folded.update(row).unwrap();
        }
        assert_eq!(folded, h);
    }

    #[test]
    fn evaluate_checks_retained_literals_only() {
        let s = HitSpectrum::new(ids(&["a", "b"]), vec![vec![true, false]]).unwrap();
        let h = infer(&s);
        assert!(h.evaluate(&[true, false]).unwrap());
        assert!(!h.evaluate(&[true, true]).unwrap());
        assert!(!h.evaluate(&[false, false]).unwrap());
        assert_eq!(
            h.evaluate(&[true]).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn inferred_hypothesis_is_consistent_with_training_rows() {
        let s = HitSpectrum::new(
            ids(&["a", "b", "c"]),
            vec![
                vec![true, false, false],
                vec![true, true, false],
                vec![true, false, false],
            ],
        )
        .unwrap();
        let h = infer(&s);
        assert_eq!(h.empirical_error(&s).unwrap(), 0.0);
    }

    #[test]
    fn initial_hypothesis_rejects_any_row_over_nonempty_universe() {
        let s = HitSpectrum::new(ids(&["a"]), vec![vec![true]]).unwrap();
        let h = ConjunctionHypothesis::initial(s.targets()).unwrap();
        // x_a ∧ ¬x_a is unsatisfiable.
        assert_eq!(h.empirical_error(&s).unwrap(), 1.0);
    }

    #[test]
    fn empirical_error_requires_rows_and_matching_universe() {
        let empty = HitSpectrum::empty(ids(&["a"])).unwrap();
        let h = ConjunctionHypothesis::initial(&ids(&["a"])).unwrap();
        assert_eq!(h.empirical_error(&empty).unwrap_err(), Error::EmptySpectrum);
        let other = HitSpectrum::new(ids(&["b"]), vec![vec![true]]).unwrap();
        assert_eq!(h.empirical_error(&other).unwrap_err(), Error::UniverseMismatch);
    }

    #[test]
    fn json_round_trip_in_universe_order() {
        let s = HitSpectrum::new(
            ids(&["t1", "t2", "t3"]),
            vec![vec![true, false, true], vec![true, true, true]],
        )
        .unwrap();
        let h = infer(&s);
        let json = h.to_json();
        assert_eq!(
            json,
            r#"{"positive":["t1","t3"],"negative":[],"universe":["t1","t2","t3"]}"#
        );
        assert_eq!(ConjunctionHypothesis::from_json(&json).unwrap(), h);
    }

    #[test]
    fn json_normalizes_literal_order_and_validates_membership() {
        let h = ConjunctionHypothesis::from_json(
            r#"{"positive":["t3","t1"],"negative":[],"universe":["t1","t2","t3"]}"#,
        )
        .unwrap();
        assert_eq!(h.positive_ids(), vec!["t1", "t3"]);
        let err = ConjunctionHypothesis::from_json(
            r#"{"positive":["zz"],"negative":[],"universe":["t1"]}"#,
        )
        .unwrap_err();
        assert_eq!(err, Error::UnknownLiteral("zz".to_string()));
    }
}
