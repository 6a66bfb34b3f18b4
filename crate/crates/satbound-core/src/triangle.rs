//! Built-in demo subject: the classic triangle classifier.
//!
//! The embedded program takes three integer side lengths, sorts them
//! ascending with three conditional swaps, and calls a classification
//! routine only when the sides form a valid triangle. The routine
//! distinguishes equilateral, isosceles, and scalene, re-checking validity
//! on entry; the caller already guarantees it, so that branch is dead code,
//! unreachable under every input.
//!
//! Coverage is tracked at basic-block granularity, 16 blocks in all, each
//! named by the source-line range it spans (`"1-3"`, `"4"`, …, `"25"`).
//! Inputs are drawn uniformly from side lengths 1..=10, so the induced
//! profile distribution is exact: all 1000 inputs are enumerated and
//! collapsed to their distinct coverage rows with rational probabilities.
//! Notably the equilateral block (`"21"`) carries probability 10/1000 = 0.01,
//! and the dead branch (`"17"`) is the only never-covered block.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::sut::{CoverageProfile, SutProfileModel};

/// Block ids of the demo classifier, in source order.
pub const TRIANGLE_BLOCKS: [&str; 16] = [
    "1-3", "4", "5", "6", "7", "8", "9", "10", "11", "14-16", "17", "18-20", "21", "22", "23",
    "25",
];

const SIDE_RANGE: core::ops::RangeInclusive<u32> = 1..=10;

/// Block-level coverage row for one input. Mirrors the classifier's control
/// flow exactly; see the module docs for the block layout.
fn coverage_row(a: u32, b: u32, c: u32) -> Vec<bool> {
    let (mut a, mut b, mut c) = (a, b, c);
    let mut hit = [false; 16];
    hit[0] = true; // 1-3: entry, result init, first swap condition
    if a > b {
        hit[1] = true; // 4: swap a,b
        core::mem::swap(&mut a, &mut b);
    }
    hit[2] = true; // 5: second swap condition
    if a > c {
        hit[3] = true; // 6: swap a,c
        core::mem::swap(&mut a, &mut c);
    }
    hit[4] = true; // 7: third swap condition
    if b > c {
        hit[5] = true; // 8: swap b,c
        core::mem::swap(&mut b, &mut c);
    }
    hit[6] = true; // 9: validity condition
    if a + b > c {
        hit[7] = true; // 10: classification call
        hit[9] = true; // 14-16: classifier entry and validity re-check
        if a + b <= c {
            hit[10] = true; // 17: dead branch, caller guarantees validity
        } else {
            hit[11] = true; // 18-20: scalene default, equilateral condition
            if a == b && b == c {
                hit[12] = true; // 21: equilateral
            } else {
                hit[13] = true; // 22: isosceles condition
                if a == b || b == c {
                    hit[14] = true; // 23: isosceles
                }
            }
        }
        hit[15] = true; // 25: classifier return
    }
    hit[8] = true; // 11: caller return
    hit.to_vec()
}

/// Enumerates all 1000 inputs and returns the induced profile distribution.
/// Profiles are listed in first-encounter order of the enumeration
/// (`a` outermost, then `b`, then `c`).
pub fn triangle_model() -> SutProfileModel {
    let mut counts: Vec<(Vec<bool>, u32)> = Vec::new();
    let mut total = 0u32;
    for a in SIDE_RANGE {
        for b in SIDE_RANGE {
            for c in SIDE_RANGE {
                let row = coverage_row(a, b, c);
                total += 1;
                match counts.iter_mut().find(|(bits, _)| *bits == row) {
                    Some((_, n)) => *n += 1,
                    None => counts.push((row, 1)),
                }
            }
        }
    }
    let targets = TRIANGLE_BLOCKS.iter().map(|s| s.to_string()).collect();
    let profiles = counts
        .into_iter()
        .map(|(hits, n)| CoverageProfile {
            hits,
            prob: n as f64 / total as f64,
        })
        .collect();
    SutProfileModel::new(targets, profiles).expect("enumeration yields a valid model")
}
