//! Hit spectra: binary test-execution × coverage-target matrices.
//!
//! Row `i`, column `j` is 1 iff execution `i` covered target `j`. Targets are
//! opaque string identifiers; whether they stand for statements, blocks, or
//! branches is up to the producer. The file format is plain CSV: a header of
//! target ids followed by one 0/1 row per execution. Zero rows is legal (the
//! pre-testing state).

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};

/// Binary coverage matrix. Immutable row lengths are enforced at
/// construction; target ids are unique and non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitSpectrum {
    targets: Vec<String>,
    rows: Vec<Vec<bool>>,
}

/// Partition of targets by observed coverage: covered in every row, in no
/// row, or somewhere in between. Each set is reported in target (file) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveragePartition {
    pub always: Vec<String>,
    pub never: Vec<String>,
    pub sometimes: Vec<String>,
}

/// One point of a saturation curve: distinct targets covered by the first
/// `tests` executions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationPoint {
    pub tests: usize,
    pub covered: usize,
}

/// A merged target and the original columns it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetGroup {
    pub id: String,
    pub members: Vec<String>,
}

/// Result of collapsing bit-identical columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSpectrum {
    pub spectrum: HitSpectrum,
    pub groups: Vec<TargetGroup>,
}

pub(crate) fn validate_target_ids(targets: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, id) in targets.iter().enumerate() {
        if id.is_empty() {
            return Err(Error::EmptyTargetId(i + 1));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateTarget(id.clone()));
        }
    }
    Ok(())
}

impl HitSpectrum {
    pub fn new(targets: Vec<String>, rows: Vec<Vec<bool>>) -> Result<Self> {
        validate_target_ids(&targets)?;
        for row in &rows {
            if row.len() != targets.len() {
                return Err(Error::DimensionMismatch {
                    expected: targets.len(),
                    found: row.len(),
                });
            }
        }
        Ok(Self { targets, rows })
    }

    /// A spectrum with targets but no executions yet.
    pub fn empty(targets: Vec<String>) -> Result<Self> {
        Self::new(targets, Vec::new())
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn n_targets(&self) -> usize {
        self.targets.len()
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends one execution row.
    pub fn push_row(&mut self, row: Vec<bool>) -> Result<()> {
        if row.len() != self.targets.len() {
            return Err(Error::DimensionMismatch {
                expected: self.targets.len(),
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Parses the CSV form: header of target ids, then one 0/1 row per line.
    ///
    /// Cell whitespace is trimmed, LF and CRLF both accepted, trailing blank
    /// lines ignored. Errors name the offending line (and column for bad
    /// cells); lines are numbered from 1 including the header.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.lines().collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        let mut it = lines.into_iter();
        let header = it.next().ok_or(Error::MissingHeader)?;
        let targets: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
        validate_target_ids(&targets)?;

        let mut rows = Vec::new();
        for (idx, line) in it.enumerate() {
            let line_no = idx + 2;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != targets.len() {
                return Err(Error::RaggedRow {
                    line: line_no,
                    expected: targets.len(),
                    found: cells.len(),
                });
            }
            let mut row = Vec::with_capacity(cells.len());
            for (col, cell) in cells.iter().enumerate() {
                match cell.trim() {
                    "0" => row.push(false),
                    "1" => row.push(true),
                    other => {
                        return Err(Error::InvalidCell {
                            line: line_no,
                            column: col + 1,
                            value: other.to_string(),
                        })
                    }
                }
            }
            rows.push(row);
        }
        Ok(Self { targets, rows })
    }

    /// Renders the CSV form, LF line endings, trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.targets.join(","));
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Splits targets into always / never / sometimes covered.
    ///
    /// Undefined (an error) on an empty spectrum: with no executions there is
    /// no evidence to partition on.
    pub fn partition(&self) -> Result<CoveragePartition> {
        if self.rows.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut partition = CoveragePartition {
            always: Vec::new(),
            never: Vec::new(),
            sometimes: Vec::new(),
        };
        for (j, id) in self.targets.iter().enumerate() {
            let hits = self.rows.iter().filter(|r| r[j]).count();
            if hits == self.rows.len() {
                partition.always.push(id.clone());
            } else if hits == 0 {
                partition.never.push(id.clone());
            } else {
                partition.sometimes.push(id.clone());
            }
        }
        Ok(partition)
    }

    /// Cumulative distinct-coverage counts, one entry per executed row.
    pub fn saturation_curve(&self) -> Vec<SaturationPoint> {
        let mut covered = alloc::vec![false; self.targets.len()];
        let mut count = 0usize;
        let mut curve = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &hit) in row.iter().enumerate() {
                if hit && !covered[j] {
                    covered[j] = true;
                    count += 1;
                }
            }
            curve.push(SaturationPoint {
                tests: i + 1,
                covered: count,
            });
        }
        curve
    }

    /// Collapses targets whose columns are bit-identical over the observed
    /// rows. Each group is named by its lexicographically smallest member;
    /// merged targets keep the position of their first member. Errors on an
    /// empty spectrum, where column identity cannot be attested.
    pub fn merge_identical_columns(&self) -> Result<MergedSpectrum> {
        if self.rows.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        // Group column indices by column content, preserving first-seen order.
        let mut classes: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        for j in 0..self.targets.len() {
            let column: Vec<bool> = self.rows.iter().map(|r| r[j]).collect();
            match classes.iter_mut().find(|(bits, _)| *bits == column) {
                Some((_, members)) => members.push(j),
                None => classes.push((column, alloc::vec![j])),
            }
        }

        let mut targets = Vec::with_capacity(classes.len());
        let mut groups = Vec::with_capacity(classes.len());
        for (_, members) in &classes {
            let ids: Vec<String> = members.iter().map(|&j| self.targets[j].clone()).collect();
            let id = ids.iter().min().expect("class is non-empty").clone();
            targets.push(id.clone());
            groups.push(TargetGroup { id, members: ids });
        }
        let rows: Vec<Vec<bool>> = self
            .rows
            .iter()
            .map(|row| classes.iter().map(|(_, members)| row[members[0]]).collect())
            .collect();
        Ok(MergedSpectrum {
            spectrum: HitSpectrum::new(targets, rows)?,
            groups,
        })
    }
}

/// Renders a saturation curve as CSV (`tests,covered`).
pub fn saturation_to_csv(curve: &[SaturationPoint]) -> String {
    let mut out = String::from("tests,covered\n");
    for p in curve {
        let _ = writeln!(out, "{},{}", p.tests, p.covered);
    }
    out
}
