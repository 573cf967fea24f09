//! Joint distributions over a pair of potential outcomes.
//!
//! The observable data only identify the two marginal distributions of a
//! counterfactual pair such as `(Y(0), Y(1))`; the joint itself is a free
//! object. This module provides a validated container for such joints,
//! the three classical reference couplings (independent, comonotone,
//! anti-comonotone), and a check that a candidate joint actually matches
//! a prescribed pair of margins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::table::PROB_TOL;

/// Which counterfactual pair a joint distribution ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JointKind {
    /// `(Y(0), Y(1))`: the outcome under control and under exposure.
    OutcomePairs,
    /// `(M(0), M(1))`: the mediator under control and under exposure.
    MediatorPairs,
    /// `(Y*(0), Y*(1))`: the outcome under mediator value 0 and 1.
    StarPairs,
}

impl JointKind {
    /// Human-readable names of the paired variables.
    pub fn pair_names(&self) -> (&'static str, &'static str) {
        match self {
            JointKind::OutcomePairs => ("Y(0)", "Y(1)"),
            JointKind::MediatorPairs => ("M(0)", "M(1)"),
            JointKind::StarPairs => ("Y*(0)", "Y*(1)"),
        }
    }

    /// Short label used in error messages.
    pub fn label(&self) -> &'static str {
        match self {
            JointKind::OutcomePairs => "outcome-pair",
            JointKind::MediatorPairs => "mediator-pair",
            JointKind::StarPairs => "star-pair",
        }
    }
}

/// A joint distribution `cells[l][k] = Pr(first = l, second = k)` over a
/// counterfactual pair.
///
/// Rows index the first member of the pair (the value under control, or
/// under mediator 0), columns the second. Total mass must be one up to
/// the validation tolerance; within-tolerance deviations are normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterfactualJoint {
    kind: JointKind,
    cells: Vec<Vec<f64>>,
}

impl CounterfactualJoint {
    /// Validates and normalizes a raw joint.
    pub fn new(kind: JointKind, cells: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = cells.len();
        let n_cols = cells.first().map_or(0, |r| r.len());
        if n_rows == 0 || n_cols == 0 || cells.iter().any(|r| r.len() != n_cols) {
            return Err(Error::ArityMismatch {
                context: "counterfactual joint",
                expected_rows: n_rows.max(1),
                expected_cols: n_cols.max(1),
                found_rows: n_rows,
                found_cols: n_cols,
            });
        }
        let mut cells = cells;
        let mut total = 0.0;
        for (l, row) in cells.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                if *v < -PROB_TOL {
                    return Err(Error::NegativeProbability {
                        row: l,
                        col: k,
                        value: *v,
                    });
                }
                if *v < 0.0 {
                    *v = 0.0;
                }
                total += *v;
            }
        }
        let deviation = (total - 1.0).abs();
        if !(deviation <= PROB_TOL) {
            return Err(Error::TotalMassViolation {
                sum: total,
                deviation,
            });
        }
        if deviation > 0.0 {
            for row in cells.iter_mut() {
                for v in row.iter_mut() {
                    *v /= total;
                }
            }
        }
        Ok(CounterfactualJoint { kind, cells })
    }

    /// The independent coupling `Pr(l, k) = first[l] * second[k]`.
    pub fn product(kind: JointKind, first: &[f64], second: &[f64]) -> Result<Self> {
        let cells = first
            .iter()
            .map(|&p| second.iter().map(|&q| p * q).collect())
            .collect();
        CounterfactualJoint::new(kind, cells)
    }

    /// The comonotone coupling: pairs the two margins quantile by quantile
    /// in increasing level order, concentrating mass on the "same rank"
    /// diagonal. Its CDF is the upper Fréchet bound `min(F(l), G(k))`.
    pub fn comonotone(kind: JointKind, first: &[f64], second: &[f64]) -> Result<Self> {
        let mut cells = vec![vec![0.0; second.len()]; first.len()];
        let mut remaining_row: Vec<f64> = first.to_vec();
        let mut remaining_col: Vec<f64> = second.to_vec();
        let (mut l, mut k) = (0, 0);
        while l < first.len() && k < second.len() {
            let moved = remaining_row[l].min(remaining_col[k]);
            cells[l][k] += moved;
            remaining_row[l] -= moved;
            remaining_col[k] -= moved;
            // Advance whichever side is exhausted; ties advance the row so
            // the walk always terminates.
            if remaining_row[l] <= remaining_col[k] {
                l += 1;
            } else {
                k += 1;
            }
        }
        CounterfactualJoint::new(kind, cells)
    }

    /// The anti-comonotone coupling: pairs increasing first-margin levels
    /// with decreasing second-margin levels, concentrating mass on the
    /// anti-diagonal. Its CDF is the lower Fréchet bound
    /// `max(F(l) + G(k) - 1, 0)`.
    pub fn anticomonotone(kind: JointKind, first: &[f64], second: &[f64]) -> Result<Self> {
        let reversed: Vec<f64> = second.iter().rev().copied().collect();
        let forward = CounterfactualJoint::comonotone(kind, first, &reversed)?;
        let n_cols = second.len();
        let cells = forward
            .cells
            .iter()
            .map(|row| (0..n_cols).map(|k| row[n_cols - 1 - k]).collect())
            .collect();
        CounterfactualJoint::new(kind, cells)
    }

    pub fn kind(&self) -> JointKind {
        self.kind
    }

    pub fn n_rows(&self) -> usize {
        self.cells.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cells[0].len()
    }

    /// `Pr(first = l, second = k)`.
    pub fn cell(&self, l: usize, k: usize) -> f64 {
        self.cells[l][k]
    }

    pub fn cells(&self) -> &[Vec<f64>] {
        &self.cells
    }

    /// Marginal distribution of the first pair member (row sums).
    pub fn row_margin(&self) -> Vec<f64> {
        self.cells.iter().map(|row| row.iter().sum()).collect()
    }

    /// Marginal distribution of the second pair member (column sums).
    pub fn col_margin(&self) -> Vec<f64> {
        (0..self.n_cols())
            .map(|k| self.cells.iter().map(|row| row[k]).sum())
            .collect()
    }
}

/// Result of checking a joint against a prescribed pair of margins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    /// Largest absolute deviation between a row sum and its target.
    pub max_row_deviation: f64,
    /// Largest absolute deviation between a column sum and its target.
    pub max_col_deviation: f64,
    /// Whether both deviations are within the requested tolerance.
    pub compatible: bool,
}

/// Checks that `joint` reproduces the prescribed margins within `tol`.
pub fn compatibility_check(
    joint: &CounterfactualJoint,
    row_margin: &[f64],
    col_margin: &[f64],
    tol: f64,
) -> Result<CompatibilityReport> {
    if joint.n_rows() != row_margin.len() || joint.n_cols() != col_margin.len() {
        return Err(Error::ArityMismatch {
            context: "margin compatibility",
            expected_rows: row_margin.len(),
            expected_cols: col_margin.len(),
            found_rows: joint.n_rows(),
            found_cols: joint.n_cols(),
        });
    }
    let max_row_deviation = joint
        .row_margin()
        .iter()
        .zip(row_margin)
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let max_col_deviation = joint
        .col_margin()
        .iter()
        .zip(col_margin)
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    Ok(CompatibilityReport {
        max_row_deviation,
        max_col_deviation,
        compatible: max_row_deviation <= tol && max_col_deviation <= tol,
    })
}
