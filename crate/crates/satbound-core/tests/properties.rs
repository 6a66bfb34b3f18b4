//! Property suite over random spectra, models, and parameter choices.

use std::collections::BTreeSet;

use proptest::prelude::*;
use satbound_core::{
    infer, sample_complexity, ConjunctionHypothesis, CoverageProfile, HitSpectrum, PacParams,
    SutProfileModel,
};

fn target_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

fn spectrum_strategy(
    targets: std::ops::RangeInclusive<usize>,
    rows: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = HitSpectrum> {
    (targets, Just(rows)).prop_flat_map(|(n, rows)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), rows)
            .prop_map(move |rows| HitSpectrum::new(target_ids(n), rows).unwrap())
    })
}

fn literal_set(h: &ConjunctionHypothesis) -> BTreeSet<(String, bool)> {
    h.positive_ids()
        .iter()
        .map(|id| (id.to_string(), true))
        .chain(h.negative_ids().iter().map(|id| (id.to_string(), false)))
        .collect()
}

fn model_strategy() -> impl Strategy<Value = SutProfileModel> {
    (1usize..=6).prop_flat_map(|n| {
        let profiles = proptest::collection::btree_set(
            proptest::collection::vec(any::<bool>(), n),
            1..=(1usize << n).min(8),
        );
        let weights = proptest::collection::vec(1u32..=100, 8);
        (profiles, weights).prop_map(move |(hits, weights)| {
            let total: u32 = weights.iter().take(hits.len()).sum();
            let profiles: Vec<CoverageProfile> = hits
                .into_iter()
                .zip(&weights)
                .map(|(hits, &w)| CoverageProfile {
                    hits,
                    prob: f64::from(w) / f64::from(total),
                })
                .collect();
            SutProfileModel::new(target_ids(n), profiles).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn csv_round_trip_is_identity(s in spectrum_strategy(1..=8, 0..=12)) {
        prop_assert_eq!(HitSpectrum::parse(&s.to_csv()).unwrap(), s);
    }

    #[test]
    fn inference_ignores_row_order(
        (s, shuffled) in spectrum_strategy(0..=6, 0..=10).prop_flat_map(|s| {
            let rows = s.rows().to_vec();
            (Just(s), Just(rows).prop_shuffle())
        })
    ) {
        let permuted = HitSpectrum::new(s.targets().to_vec(), shuffled).unwrap();
        prop_assert_eq!(infer(&permuted), infer(&s));
        if s.n_rows() > 0 {
            prop_assert_eq!(permuted.partition().unwrap(), s.partition().unwrap());
            prop_assert_eq!(
                permuted.saturation_curve().last().unwrap().covered,
                s.saturation_curve().last().unwrap().covered
            );
        }
    }

    #[test]
    fn folding_updates_equals_batch_inference(s in spectrum_strategy(0..=6, 0..=10)) {
        let mut h = ConjunctionHypothesis::initial(s.targets()).unwrap();
        for row in s.rows() {
            h = h.update(row).unwrap();
        }
        prop_assert_eq!(h, infer(&s));
    }

    #[test]
    fn elimination_only_shrinks(s in spectrum_strategy(0..=6, 0..=10)) {
        let mut h = ConjunctionHypothesis::initial(s.targets()).unwrap();
        let mut live = literal_set(&h);
        for row in s.rows() {
            h = h.update(row).unwrap();
            let next = literal_set(&h);
            prop_assert!(next.is_subset(&live));
            live = next;
            // Each row assigns every target one value, so from the first row
            // on, no target retains both of its literals.
            let positive: BTreeSet<&str> = h.positive_ids().into_iter().collect();
            prop_assert!(h.negative_ids().iter().all(|id| !positive.contains(id)));
        }
    }

    #[test]
    fn inferred_hypothesis_has_zero_empirical_error(s in spectrum_strategy(0..=6, 1..=10)) {
        prop_assert_eq!(infer(&s).empirical_error(&s).unwrap(), 0.0);
    }

    #[test]
    fn inference_agrees_with_partition(s in spectrum_strategy(0..=6, 1..=10)) {
        let h = infer(&s);
        let p = s.partition().unwrap();
        prop_assert_eq!(h.positive_ids(), p.always.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        prop_assert_eq!(h.negative_ids(), p.never.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    }

    #[test]
    fn merging_preserves_partition_semantics(s in spectrum_strategy(0..=6, 1..=10)) {
        let merged = s.merge_identical_columns().unwrap();
        prop_assert!(merged.spectrum.n_targets() <= s.n_targets());
        let expand = |set: &[String]| -> BTreeSet<String> {
            set.iter()
                .flat_map(|id| {
                    merged
                        .groups
                        .iter()
                        .find(|g| &g.id == id)
                        .unwrap()
                        .members
                        .clone()
                })
                .collect()
        };
        let original = s.partition().unwrap();
        let merged_partition = merged.spectrum.partition().unwrap();
        prop_assert_eq!(expand(&merged_partition.always), original.always.iter().cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(expand(&merged_partition.never), original.never.iter().cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(expand(&merged_partition.sometimes), original.sometimes.iter().cloned().collect::<BTreeSet<_>>());
    }

    #[test]
    fn appending_a_row_never_grows_always_or_never(
        s in spectrum_strategy(0..=6, 1..=10),
        row_bits in proptest::collection::vec(any::<bool>(), 6),
    ) {
        let before = s.partition().unwrap();
        let mut grown = s.clone();
        grown.push_row(row_bits[..s.n_targets()].to_vec()).unwrap();
        let after = grown.partition().unwrap();
        let to_set = |v: &[String]| v.iter().cloned().collect::<BTreeSet<_>>();
        prop_assert!(to_set(&after.always).is_subset(&to_set(&before.always)));
        prop_assert!(to_set(&after.never).is_subset(&to_set(&before.never)));
        // Covered count (everything outside the never set) never shrinks.
        prop_assert!(after.never.len() <= before.never.len());
    }

    #[test]
    fn saturation_is_monotone_and_ends_at_covered_count(s in spectrum_strategy(0..=6, 1..=10)) {
        let curve = s.saturation_curve();
        prop_assert_eq!(curve.len(), s.n_rows());
        prop_assert!(curve.windows(2).all(|w| w[0].covered <= w[1].covered));
        let covered = s.n_targets() - s.partition().unwrap().never.len();
        prop_assert_eq!(curve.last().unwrap().covered, covered);
    }

    #[test]
    fn bound_is_affine_in_target_count(
        n in 1u64..=10_000,
        e in 0.01f64..0.99,
        d in 0.01f64..0.99,
    ) {
        let params = PacParams::new(e, d).unwrap();
        let r1 = sample_complexity(n, params).raw;
        let r2 = sample_complexity(2 * n, params).raw;
        let r3 = sample_complexity(3 * n, params).raw;
        let d1 = r2 - r1;
        let d2 = r3 - r2;
        prop_assert!((d1 - d2).abs() <= 1e-9 * d1.abs().max(1.0));
    }

    #[test]
    fn bound_ceiling_is_consistent(
        n in 0u64..=1_000_000,
        e in 0.01f64..0.99,
        d in 0.01f64..0.99,
    ) {
        let b = sample_complexity(n, PacParams::new(e, d).unwrap());
        prop_assert!(b.tests as f64 - 1.0 < b.raw && b.raw <= b.tests as f64);
    }

    #[test]
    fn bound_decreases_in_each_parameter(
        n in 0u64..=1000,
        lo in 0.01f64..0.5,
        hi in 0.5f64..0.99,
        other in 0.01f64..0.99,
    ) {
        let raw = |e: f64, d: f64| sample_complexity(n, PacParams::new(e, d).unwrap()).raw;
        prop_assert!(raw(lo, other) > raw(hi, other));
        prop_assert!(raw(other, lo) > raw(other, hi));
    }

    #[test]
    fn hypothesis_json_round_trips(s in spectrum_strategy(0..=6, 0..=10)) {
        let h = infer(&s);
        prop_assert_eq!(ConjunctionHypothesis::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn model_json_round_trips(m in model_strategy()) {
        prop_assert_eq!(SutProfileModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn sampling_streams_nest(m in model_strategy(), seed in any::<u64>(), len in 0usize..=40) {
        let short = m.sample_executions(len, seed);
        let long = m.sample_executions(len + 20, seed);
        prop_assert_eq!(&long.rows()[..len], short.rows());
        for row in long.rows() {
            prop_assert!(m.profiles().iter().any(|p| &p.hits == row));
        }
    }
}
