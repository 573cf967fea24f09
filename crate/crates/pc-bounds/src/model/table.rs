//! Row-stochastic conditional probability tables and the law of total
//! probability that turns mediator tables into outcome-given-exposure
//! margins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validation tolerance for probabilities: row sums may deviate from one by
/// at most this much before the input is rejected, and deviations within it
/// are normalized away.
pub const PROB_TOL: f64 = 1e-9;

/// The observable variables of the complete-mediation diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variable {
    /// Binary exposure `D`.
    Exposure,
    /// Binary mediator `M`.
    Mediator,
    /// Ordinal outcome `Y`.
    Outcome,
}

impl Variable {
    /// Conventional single-letter symbol.
    pub fn symbol(&self) -> &'static str {
        match self {
            Variable::Exposure => "D",
            Variable::Mediator => "M",
            Variable::Outcome => "Y",
        }
    }
}

/// A variable together with the number of values it takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarLabel {
    pub var: Variable,
    pub arity: usize,
}

impl VarLabel {
    pub fn new(var: Variable, arity: usize) -> Self {
        VarLabel { var, arity }
    }
}

/// A row-stochastic table `entries[r][c] = P(col = c | row = r)`.
///
/// The row variable is always the conditioning variable. Construction via
/// [`ConditionalTable::new`] validates every entry and normalizes row sums
/// whose deviation from one is within [`PROB_TOL`]; larger deviations are
/// rejected, never silently renormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTable {
    row: VarLabel,
    col: VarLabel,
    entries: Vec<Vec<f64>>,
}

impl ConditionalTable {
    /// Validates and normalizes a raw table.
    pub fn new(row: VarLabel, col: VarLabel, entries: Vec<Vec<f64>>) -> Result<Self> {
        let found_rows = entries.len();
        let found_cols = entries.first().map_or(0, |r| r.len());
        let ragged = entries.iter().any(|r| r.len() != found_cols);
        if ragged || found_rows != row.arity || found_cols != col.arity {
            return Err(Error::ArityMismatch {
                context: "conditional table",
                expected_rows: row.arity,
                expected_cols: col.arity,
                found_rows,
                found_cols,
            });
        }
        let mut normalized = entries;
        for (r, row_entries) in normalized.iter_mut().enumerate() {
            for (c, v) in row_entries.iter_mut().enumerate() {
                if *v < -PROB_TOL {
                    return Err(Error::NegativeProbability {
                        row: r,
                        col: c,
                        value: *v,
                    });
                }
                if *v < 0.0 {
                    *v = 0.0; // float dust within tolerance
                }
            }
            let sum: f64 = row_entries.iter().sum();
            let deviation = (sum - 1.0).abs();
            if !(deviation <= PROB_TOL) {
                return Err(Error::RowSumViolation {
                    row: r,
                    sum,
                    deviation,
                });
            }
            if deviation > 0.0 {
                for v in row_entries.iter_mut() {
                    *v /= sum;
                }
            }
        }
        Ok(ConditionalTable {
            row,
            col,
            entries: normalized,
        })
    }

    /// Shorthand for a `P(Y | D)` table with `n_levels` outcome columns.
    pub fn y_given_d(entries: Vec<Vec<f64>>, n_levels: usize) -> Result<Self> {
        ConditionalTable::new(
            VarLabel::new(Variable::Exposure, 2),
            VarLabel::new(Variable::Outcome, n_levels),
            entries,
        )
    }

    /// Shorthand for the binary `P(M | D)` table.
    pub fn m_given_d(entries: Vec<Vec<f64>>) -> Result<Self> {
        ConditionalTable::new(
            VarLabel::new(Variable::Exposure, 2),
            VarLabel::new(Variable::Mediator, 2),
            entries,
        )
    }

    /// Shorthand for a `P(Y | M)` table with `n_levels` outcome columns.
    pub fn y_given_m(entries: Vec<Vec<f64>>, n_levels: usize) -> Result<Self> {
        ConditionalTable::new(
            VarLabel::new(Variable::Mediator, 2),
            VarLabel::new(Variable::Outcome, n_levels),
            entries,
        )
    }

    pub fn row_label(&self) -> VarLabel {
        self.row
    }

    pub fn col_label(&self) -> VarLabel {
        self.col
    }

    pub fn n_rows(&self) -> usize {
        self.row.arity
    }

    pub fn n_cols(&self) -> usize {
        self.col.arity
    }

    /// `P(col = c | row = r)`.
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.entries[r][c]
    }

    /// The conditional distribution given `row = r`.
    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r]
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// `P(col > t | row = r)`.
    pub fn mass_above(&self, r: usize, t: usize) -> f64 {
        self.entries[r][t + 1..].iter().sum()
    }

    /// `P(col <= t | row = r)`.
    pub fn mass_at_or_below(&self, r: usize, t: usize) -> f64 {
        self.entries[r][..=t].iter().sum()
    }
}

/// Composes `P(M|D)` and `P(Y|M)` into `P(Y|D)` by the law of total
/// probability over the binary mediator:
///
/// ```text
/// P(Y=k | D=d) = P(M=0|D=d) P(Y=k|M=0) + P(M=1|D=d) P(Y=k|M=1)
/// ```
pub fn derive_outcome_given_exposure(
    m_given_d: &ConditionalTable,
    y_given_m: &ConditionalTable,
) -> Result<ConditionalTable> {
    if m_given_d.n_rows() != 2 || m_given_d.n_cols() != 2 {
        return Err(Error::ArityMismatch {
            context: "mediator table",
            expected_rows: 2,
            expected_cols: 2,
            found_rows: m_given_d.n_rows(),
            found_cols: m_given_d.n_cols(),
        });
    }
    if y_given_m.n_rows() != 2 {
        return Err(Error::ArityMismatch {
            context: "outcome-given-mediator table",
            expected_rows: 2,
            expected_cols: y_given_m.n_cols(),
            found_rows: y_given_m.n_rows(),
            found_cols: y_given_m.n_cols(),
        });
    }
    let n_levels = y_given_m.n_cols();
    let rows = (0..2)
        .map(|d| {
            (0..n_levels)
                .map(|k| {
                    m_given_d.entry(d, 0) * y_given_m.entry(0, k)
                        + m_given_d.entry(d, 1) * y_given_m.entry(1, k)
                })
                .collect()
        })
        .collect();
    ConditionalTable::y_given_d(rows, n_levels)
}
