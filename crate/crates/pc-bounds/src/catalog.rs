//! Built-in worked examples with their published reference bounds.
//!
//! Both examples come from the article these bounds were introduced in;
//! each carries the observable tables plus the two-decimal interval the
//! source reports, so callers can verify the implementation reproduces
//! the published numbers end to end.

use crate::error::{Error, Result};
use crate::model::{ConditionalTable, OutcomeScale, Scenario};

/// A complete-mediation scenario together with its published two-decimal
/// bounds, both mediator-aware and mediator-blind.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkedExample {
    pub id: u32,
    pub title: &'static str,
    pub scenario: Scenario,
    /// Published `(lower, upper)` using the mediator tables.
    pub reported_mediator: (f64, f64),
    /// Published `(lower, upper)` ignoring the mediator.
    pub reported_simple: (f64, f64),
}

/// Looks up a built-in worked example. Valid ids are 1 (binary outcome)
/// and 2 (three-level outcome).
pub fn worked_example(id: u32) -> Result<WorkedExample> {
    match id {
        1 => Ok(WorkedExample {
            id,
            title: "binary outcome with a complete mediator",
            scenario: Scenario::mediator(
                OutcomeScale::binary(),
                ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.3, 0.7]])?,
                ConditionalTable::y_given_m(vec![vec![0.8, 0.2], vec![0.05, 0.95]], 2)?,
            )?,
            reported_mediator: (0.57, 0.78),
            reported_simple: (0.57, 0.95),
        }),
        2 => Ok(WorkedExample {
            id,
            title: "three-level outcome with a complete mediator",
            scenario: Scenario::mediator(
                OutcomeScale::new(2, 1)?,
                ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.05, 0.95]])?,
                ConditionalTable::y_given_m(
                    vec![vec![0.8, 0.1, 0.1], vec![0.25, 0.05, 0.7]],
                    3,
                )?,
            )?,
            reported_mediator: (0.71, 0.89),
            reported_simple: (0.71, 1.0),
        }),
        other => Err(Error::InvalidDocument(format!(
            "no built-in example with id {other}; valid ids are 1 and 2"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::bounds::{bounds_for_scenario, dominance_report};
    use crate::display::matches_reported_2dp;

    #[test]
    fn both_examples_reproduce_their_published_intervals() {
        for id in [1, 2] {
            let example = worked_example(id).unwrap();
            let report = dominance_report(&example.scenario).unwrap();
            let (med_lo, med_hi) = example.reported_mediator;
            let (simple_lo, simple_hi) = example.reported_simple;
            assert!(matches_reported_2dp(report.mediator_bounds.lower, med_lo));
            assert!(matches_reported_2dp(report.mediator_bounds.upper, med_hi));
            assert!(matches_reported_2dp(report.simple_bounds.lower, simple_lo));
            assert!(matches_reported_2dp(report.simple_bounds.upper, simple_hi));
        }
    }

    #[test]
    fn example_one_margins_are_the_known_values() {
        let example = worked_example(1).unwrap();
        let derived = example.scenario.outcome_given_exposure().unwrap();
        assert_abs_diff_eq!(derived.entry(1, 1), 0.725, epsilon = 1e-15);
        assert_abs_diff_eq!(derived.entry(0, 1), 0.3125, epsilon = 1e-15);
        let bounds = bounds_for_scenario(&example.scenario).unwrap();
        assert_abs_diff_eq!(bounds.upper, 0.7827586206896552, epsilon = 1e-15);
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            worked_example(3).unwrap_err(),
            Error::InvalidDocument(_)
        ));
        assert!(matches!(
            worked_example(0).unwrap_err(),
            Error::InvalidDocument(_)
        ));
    }
}
