//! Scenarios: everything the analyst observes about one study.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::scale::OutcomeScale;
use crate::model::table::{derive_outcome_given_exposure, ConditionalTable, Variable};

/// The observed margins of one study, at one of two levels of detail.
///
/// A `Simple` scenario records only the outcome distribution under each
/// exposure arm. A `Mediator` scenario additionally identifies a complete
/// binary mediator, so the outcome depends on exposure only through it;
/// the outcome-given-exposure margins are then derived, not stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Scenario {
    Simple {
        scale: OutcomeScale,
        /// `P(Y = k | D = d)`, rows indexed by `d`.
        y_given_d: ConditionalTable,
    },
    Mediator {
        scale: OutcomeScale,
        /// `P(M = m | D = d)`, rows indexed by `d`.
        m_given_d: ConditionalTable,
        /// `P(Y = k | M = m)`, rows indexed by `m`.
        y_given_m: ConditionalTable,
    },
}

impl Scenario {
    /// Builds and validates a margins-only scenario.
    pub fn simple(scale: OutcomeScale, y_given_d: ConditionalTable) -> Result<Self> {
        let scenario = Scenario::Simple { scale, y_given_d };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Builds and validates a complete-mediator scenario.
    pub fn mediator(
        scale: OutcomeScale,
        m_given_d: ConditionalTable,
        y_given_m: ConditionalTable,
    ) -> Result<Self> {
        let scenario = Scenario::Mediator {
            scale,
            m_given_d,
            y_given_m,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn scale(&self) -> OutcomeScale {
        match self {
            Scenario::Simple { scale, .. } | Scenario::Mediator { scale, .. } => *scale,
        }
    }

    pub fn has_mediator(&self) -> bool {
        matches!(self, Scenario::Mediator { .. })
    }

    /// The `(P(M|D), P(Y|M))` tables, or `None` for a margins-only
    /// scenario.
    pub fn mediator_tables(&self) -> Option<(&ConditionalTable, &ConditionalTable)> {
        match self {
            Scenario::Mediator {
                m_given_d,
                y_given_m,
                ..
            } => Some((m_given_d, y_given_m)),
            Scenario::Simple { .. } => None,
        }
    }

    /// The outcome-given-exposure margins: stored for `Simple`, composed
    /// through the mediator for `Mediator`.
    pub fn outcome_given_exposure(&self) -> Result<ConditionalTable> {
        match self {
            Scenario::Simple { y_given_d, .. } => Ok(y_given_d.clone()),
            Scenario::Mediator {
                m_given_d,
                y_given_m,
                ..
            } => derive_outcome_given_exposure(m_given_d, y_given_m),
        }
    }

    /// Checks table shapes against the scale and each table's declared
    /// variables. Entry-level validity (nonnegativity, row sums) is already
    /// guaranteed by [`ConditionalTable::new`].
    pub fn validate(&self) -> Result<()> {
        let n_levels = self.scale().n_levels();
        match self {
            Scenario::Simple { y_given_d, .. } => {
                expect_shape(y_given_d, "outcome-given-exposure table", 2, n_levels)?;
                expect_vars(y_given_d, Variable::Exposure, Variable::Outcome)?;
            }
            Scenario::Mediator {
                m_given_d,
                y_given_m,
                ..
            } => {
                expect_shape(m_given_d, "mediator-given-exposure table", 2, 2)?;
                expect_vars(m_given_d, Variable::Exposure, Variable::Mediator)?;
                expect_shape(y_given_m, "outcome-given-mediator table", 2, n_levels)?;
                expect_vars(y_given_m, Variable::Mediator, Variable::Outcome)?;
            }
        }
        Ok(())
    }
}

fn expect_shape(
    table: &ConditionalTable,
    context: &'static str,
    rows: usize,
    cols: usize,
) -> Result<()> {
    if table.n_rows() != rows || table.n_cols() != cols {
        return Err(Error::ArityMismatch {
            context,
            expected_rows: rows,
            expected_cols: cols,
            found_rows: table.n_rows(),
            found_cols: table.n_cols(),
        });
    }
    Ok(())
}

fn expect_vars(table: &ConditionalTable, row: Variable, col: Variable) -> Result<()> {
    if table.row_label().var != row || table.col_label().var != col {
        return Err(Error::InvalidDocument(format!(
            "table conditions {} on {}, expected {} on {}",
            table.col_label().var.symbol(),
            table.row_label().var.symbol(),
            col.symbol(),
            row.symbol(),
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    #[test]
    fn mediator_scenario_derives_margins() {
        let scenario = Scenario::mediator(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.3, 0.7]]).unwrap(),
            ConditionalTable::y_given_m(vec![vec![0.8, 0.2], vec![0.05, 0.95]], 2).unwrap(),
        )
        .unwrap();
        let margins = scenario.outcome_given_exposure().unwrap();
        assert_abs_diff_eq!(margins.entry(1, 1), 0.725, epsilon = 1e-12);
        assert_abs_diff_eq!(margins.entry(0, 1), 0.3125, epsilon = 1e-12);
    }

    #[test]
    fn rejects_scale_table_mismatch() {
        // three outcome levels in the table, binary scale
        let err = Scenario::simple(
            OutcomeScale::binary(),
            ConditionalTable::y_given_d(
                vec![vec![0.5, 0.3, 0.2], vec![0.1, 0.2, 0.7]],
                3,
            )
            .unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
    }

    #[test]
    fn rejects_wrong_conditioning_variable() {
        // an M-given-D table offered where Y-given-D is required
        let err = Scenario::simple(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.3, 0.7]]).unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidDocument(_)));
    }
}
