//! Random compatible joints, and the randomized containment check they
//! power.
//!
//! A joint with prescribed row and column margins is drawn cell by cell
//! in row-major order: each cell is uniform on the interval its current
//! row/column slacks leave feasible, so every draw lands inside the
//! transportation polytope without any rejection loop.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_mediator_ordinal, bounds_simple_ordinal};
use crate::error::{Error, Result};
use crate::model::{
    BoundInterval, ConditionalTable, CounterfactualJoint, JointKind, OutcomeScale, Scenario,
};
use crate::oracle::{true_pc_mediator, true_pc_simple};

/// Draws one joint with the given margins.
///
/// Cells are filled row-major; cell `(i, j)` is uniform on
/// `[max(0, R - F), min(R, C_j)]`, where `R` is the mass still owed to
/// row `i`, `C_j` the remaining capacity of column `j`, and `F` the
/// total remaining capacity of the columns after `j`. The lower limit
/// reserves enough room for the rest of the row, so the draw never dead-
/// ends and the final cells are forced to exact feasibility.
pub fn sample_joint_with_margins(
    kind: JointKind,
    row_margin: &[f64],
    col_margin: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<CounterfactualJoint> {
    let n_rows = row_margin.len();
    let n_cols = col_margin.len();
    let mut col_slack = col_margin.to_vec();
    let mut cells = vec![vec![0.0; n_cols]; n_rows];
    for (i, row) in cells.iter_mut().enumerate() {
        let mut owed = row_margin[i];
        let mut future: f64 = col_slack.iter().skip(1).sum();
        for j in 0..n_cols {
            let lo = (owed - future).max(0.0);
            let hi = owed.min(col_slack[j]);
            let value = if hi > lo {
                rng.gen_range(lo..=hi)
            } else {
                lo.min(hi)
            };
            row[j] = value;
            owed -= value;
            col_slack[j] -= value;
            if j + 1 < n_cols {
                future -= col_slack[j + 1];
            }
        }
    }
    CounterfactualJoint::new(kind, cells)
}

/// Outcome of checking many random compatible joints against a
/// closed-form interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingCheck {
    pub n_samples: usize,
    /// Smallest and largest PC observed across the draws.
    pub min_seen: f64,
    pub max_seen: f64,
    /// The interval the draws were checked against.
    pub interval: BoundInterval,
    /// Largest excursion of any draw beyond the interval (0 when all
    /// draws are contained).
    pub worst_violation: f64,
    /// Whether every draw stayed inside the interval at tolerance 1e-9.
    pub all_contained: bool,
}

fn summarize(interval: BoundInterval, pcs: impl IntoIterator<Item = f64>) -> SamplingCheck {
    let mut n_samples = 0;
    let mut min_seen = f64::INFINITY;
    let mut max_seen = f64::NEG_INFINITY;
    let mut worst_violation = 0.0f64;
    for pc in pcs {
        n_samples += 1;
        min_seen = min_seen.min(pc);
        max_seen = max_seen.max(pc);
        worst_violation = worst_violation
            .max(interval.lower - pc)
            .max(pc - interval.upper);
    }
    SamplingCheck {
        n_samples,
        min_seen,
        max_seen,
        worst_violation,
        all_contained: worst_violation <= 1e-9,
        interval,
    }
}

/// Draws `n_samples` random `(Y(0), Y(1))` joints compatible with the
/// margins and checks each one's PC against the margins-only closed form.
pub fn sampling_check_simple(
    y_given_d: &ConditionalTable,
    scale: OutcomeScale,
    n_samples: usize,
    seed: u64,
) -> Result<SamplingCheck> {
    let interval = bounds_simple_ordinal(y_given_d, scale)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pcs = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let joint = sample_joint_with_margins(
            JointKind::OutcomePairs,
            y_given_d.row(0),
            y_given_d.row(1),
            &mut rng,
        )?;
        pcs.push(true_pc_simple(&joint, scale)?);
    }
    Ok(summarize(interval, pcs))
}

/// Draws `n_samples` random mediation joint pairs compatible with the
/// scenario's margins and checks each pair's PC against the mediator
/// closed form.
pub fn sampling_check_mediator(
    scenario: &Scenario,
    n_samples: usize,
    seed: u64,
) -> Result<SamplingCheck> {
    let Some((m_given_d, y_given_m)) = scenario.mediator_tables() else {
        return Err(Error::ScenarioKindMismatch {
            context: "mediator sampling check",
            expected: "mediator",
            found: "simple",
        });
    };
    let interval = bounds_mediator_ordinal(scenario)?;
    let scale = scenario.scale();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pcs = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let m_joint = sample_joint_with_margins(
            JointKind::MediatorPairs,
            m_given_d.row(0),
            m_given_d.row(1),
            &mut rng,
        )?;
        let star_joint = sample_joint_with_margins(
            JointKind::StarPairs,
            y_given_m.row(0),
            y_given_m.row(1),
            &mut rng,
        )?;
        pcs.push(true_pc_mediator(&m_joint, &star_joint, scale)?);
    }
    Ok(summarize(interval, pcs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::compatibility_check;

    #[test]
    fn sampled_joints_match_their_margins() {
        let row = [0.7175, 0.0925, 0.19];
        let col = [0.2775, 0.0525, 0.67];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let joint =
                sample_joint_with_margins(JointKind::OutcomePairs, &row, &col, &mut rng).unwrap();
            let report = compatibility_check(&joint, &row, &col, 1e-9).unwrap();
            assert!(report.compatible, "margins off: {report:?}");
        }
    }

    #[test]
    fn simple_sampling_check_is_contained_and_deterministic() {
        let table = ConditionalTable::y_given_d(
            vec![vec![0.7175, 0.0925, 0.19], vec![0.2775, 0.0525, 0.67]],
            3,
        )
        .unwrap();
        let scale = OutcomeScale::new(2, 1).unwrap();
        let first = sampling_check_simple(&table, scale, 2000, 11).unwrap();
        assert!(first.all_contained, "violation {:?}", first);
        assert!(first.min_seen >= first.interval.lower - 1e-9);
        assert!(first.max_seen <= first.interval.upper + 1e-9);
        let second = sampling_check_simple(&table, scale, 2000, 11).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn mediator_sampling_check_is_contained() {
        let scenario = Scenario::mediator(
            OutcomeScale::new(2, 1).unwrap(),
            ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.05, 0.95]]).unwrap(),
            ConditionalTable::y_given_m(
                vec![vec![0.8, 0.1, 0.1], vec![0.25, 0.05, 0.7]],
                3,
            )
            .unwrap(),
        )
        .unwrap();
        let check = sampling_check_mediator(&scenario, 2000, 13).unwrap();
        assert!(check.all_contained, "violation {:?}", check);
        // The draws should spread well inside the interval, not collapse
        // onto a point.
        assert!(check.max_seen - check.min_seen > 0.01);
    }
}
