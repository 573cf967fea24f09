//! Numerical oracle for the closed-form bounds.
//!
//! The bounds in [`crate::bounds`] claim that the probability of
//! causation, over every counterfactual joint compatible with the
//! observed margins, stays inside an interval. This module checks that
//! claim from the other side, without reusing the closed forms:
//!
//! * [`true_pc_simple`] / [`true_pc_mediator`] evaluate the exact PC of a
//!   fully specified counterfactual joint;
//! * [`envelope_simple`] computes the exact attainable `[min, max]` of PC
//!   for margins-only scenarios (the objective factors through a single
//!   2x2 aggregate, so Fréchet bounds are exact and witnesses explicit);
//! * [`envelope_mediator`] searches the mediator polytopes by exhaustive
//!   grid plus local refinement, exhibiting feasible witnesses;
//! * [`sampling`] draws random compatible joints and confirms their PC
//!   never escapes the closed-form interval.

mod grid;
mod sampling;

pub use grid::envelope_mediator;
pub use sampling::{
    sample_joint_with_margins, sampling_check_mediator, sampling_check_simple, SamplingCheck,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConditionalTable, CounterfactualJoint, JointKind, OutcomeScale};

/// How an [`Envelope`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeMethod {
    /// Closed Fréchet solution of the aggregated 2x2 problem (exact).
    FrechetExact,
    /// Grid search over free parameters plus local refinement (inner
    /// approximation: every reported value is attained).
    GridSearch,
}

/// The joint(s) attaining an envelope endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EnvelopeWitness {
    /// A `(Y(0), Y(1))` joint (margins-only scenarios).
    Outcome(CounterfactualJoint),
    /// A `(M(0), M(1))` joint together with a `(Y*(0), Y*(1))` joint
    /// (mediator scenarios).
    Mediation {
        mediator: CounterfactualJoint,
        star: CounterfactualJoint,
    },
}

/// The attainable range of the probability of causation over all
/// counterfactual joints compatible with the observed margins, with the
/// joints attaining each endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub min_pc: f64,
    pub max_pc: f64,
    pub at_min: EnvelopeWitness,
    pub at_max: EnvelopeWitness,
    pub method: EnvelopeMethod,
    /// Grid step (grid-search method only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<f64>,
}

pub(crate) fn expect_joint(
    joint: &CounterfactualJoint,
    kind: JointKind,
    n_levels: usize,
    context: &'static str,
) -> Result<()> {
    if joint.kind() != kind {
        return Err(Error::JointKindMismatch {
            context,
            expected: kind.label(),
            found: joint.kind().label(),
        });
    }
    if joint.n_rows() != n_levels || joint.n_cols() != n_levels {
        return Err(Error::ArityMismatch {
            context,
            expected_rows: n_levels,
            expected_cols: n_levels,
            found_rows: joint.n_rows(),
            found_cols: joint.n_cols(),
        });
    }
    Ok(())
}

/// Exact probability of causation for a fully specified `(Y(0), Y(1))`
/// joint:
///
/// ```text
/// PC = Pr(Y(0) <= t, Y(1) > t) / Pr(Y(1) > t)
/// ```
pub fn true_pc_simple(joint: &CounterfactualJoint, scale: OutcomeScale) -> Result<f64> {
    expect_joint(
        joint,
        JointKind::OutcomePairs,
        scale.n_levels(),
        "simple-scenario PC",
    )?;
    let t = scale.threshold;
    let denominator: f64 = joint.col_margin()[t + 1..].iter().sum();
    if denominator <= 0.0 {
        return Err(Error::UndefinedPc { threshold: t });
    }
    let numerator: f64 = joint.cells()[..=t]
        .iter()
        .map(|row| row[t + 1..].iter().sum::<f64>())
        .sum();
    Ok(numerator / denominator)
}

/// Exact probability of causation for a complete-mediation model
/// specified by a `(M(0), M(1))` joint and a `(Y*(0), Y*(1))` joint,
/// assumed independent of each other.
///
/// Exposure flips the outcome above the threshold only on the mediator
/// off-diagonal, so the numerator is
///
/// ```text
/// sum over l <= t < k of  ystar[l][k]*m01 + ystar[k][l]*m10
/// ```
///
/// and the denominator is `Pr(Y > t | D = 1)` reconstructed from the
/// joints' margins.
pub fn true_pc_mediator(
    m_joint: &CounterfactualJoint,
    ystar_joint: &CounterfactualJoint,
    scale: OutcomeScale,
) -> Result<f64> {
    expect_joint(m_joint, JointKind::MediatorPairs, 2, "mediator-model PC")?;
    expect_joint(
        ystar_joint,
        JointKind::StarPairs,
        scale.n_levels(),
        "mediator-model PC",
    )?;
    let t = scale.threshold;
    let n = scale.n_levels();
    let m_col = m_joint.col_margin(); // distribution of M(1)
    let star_row = ystar_joint.row_margin(); // distribution of Y*(0)
    let star_col = ystar_joint.col_margin(); // distribution of Y*(1)
    let denominator: f64 = (t + 1..n)
        .map(|k| m_col[0] * star_row[k] + m_col[1] * star_col[k])
        .sum();
    if denominator <= 0.0 {
        return Err(Error::UndefinedPc { threshold: t });
    }
    let m01 = m_joint.cell(0, 1);
    let m10 = m_joint.cell(1, 0);
    let mut numerator = 0.0;
    for l in 0..=t {
        for k in t + 1..n {
            numerator += ystar_joint.cell(l, k) * m01 + ystar_joint.cell(k, l) * m10;
        }
    }
    Ok(numerator / denominator)
}

/// Composes a mediator joint and a star joint (assumed independent) into
/// the induced `(Y(0), Y(1))` joint via `Y(d) = Y*(M(d))`:
///
/// ```text
/// Pr(Y(0)=p, Y(1)=q) = m00*[p=q]*Pr(Y*(0)=p) + m01*ystar[p][q]
///                    + m10*ystar[q][p]       + m11*[p=q]*Pr(Y*(1)=p)
/// ```
///
/// [`true_pc_simple`] of the result equals [`true_pc_mediator`] of the
/// inputs, which cross-checks the two PC expressions against each other.
pub fn induce_outcome_joint(
    m_joint: &CounterfactualJoint,
    ystar_joint: &CounterfactualJoint,
) -> Result<CounterfactualJoint> {
    expect_joint(m_joint, JointKind::MediatorPairs, 2, "induced outcome joint")?;
    if ystar_joint.kind() != JointKind::StarPairs {
        return Err(Error::JointKindMismatch {
            context: "induced outcome joint",
            expected: JointKind::StarPairs.label(),
            found: ystar_joint.kind().label(),
        });
    }
    let n = ystar_joint.n_rows();
    let star_row = ystar_joint.row_margin();
    let star_col = ystar_joint.col_margin();
    let (m00, m01) = (m_joint.cell(0, 0), m_joint.cell(0, 1));
    let (m10, m11) = (m_joint.cell(1, 0), m_joint.cell(1, 1));
    let mut cells = vec![vec![0.0; n]; n];
    for (p, row) in cells.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            *cell = m01 * ystar_joint.cell(p, q) + m10 * ystar_joint.cell(q, p);
            if p == q {
                *cell += m00 * star_row[p] + m11 * star_col[p];
            }
        }
    }
    CounterfactualJoint::new(JointKind::OutcomePairs, cells)
}

/// Exact attainable PC range for a margins-only scenario.
///
/// The PC of any compatible `(Y(0), Y(1))` joint depends on the joint only
/// through `A = Pr(Y(0) <= t, Y(1) > t)`, whose margins are
/// `r = P(Y <= t | D=0)` and `s = P(Y > t | D=1)`. The attainable range of
/// `A` is the Fréchet interval `[max(0, r+s-1), min(r, s)]`, so the PC
/// envelope is that interval divided by `s` — and explicit couplings
/// attain both ends.
pub fn envelope_simple(y_given_d: &ConditionalTable, scale: OutcomeScale) -> Result<Envelope> {
    if y_given_d.n_rows() != 2 || y_given_d.n_cols() != scale.n_levels() {
        return Err(Error::ArityMismatch {
            context: "simple-scenario envelope",
            expected_rows: 2,
            expected_cols: scale.n_levels(),
            found_rows: y_given_d.n_rows(),
            found_cols: y_given_d.n_cols(),
        });
    }
    let t = scale.threshold;
    let r = y_given_d.mass_at_or_below(0, t);
    let s = y_given_d.mass_above(1, t);
    if s <= 0.0 {
        return Err(Error::UndefinedPc { threshold: t });
    }
    let a_min = (r + s - 1.0).max(0.0);
    let a_max = r.min(s);
    let at_min = coupling_with_cross_mass(y_given_d, scale, a_min)?;
    let at_max = coupling_with_cross_mass(y_given_d, scale, a_max)?;
    Ok(Envelope {
        min_pc: a_min / s,
        max_pc: a_max / s,
        at_min: EnvelopeWitness::Outcome(at_min),
        at_max: EnvelopeWitness::Outcome(at_max),
        method: EnvelopeMethod::FrechetExact,
        resolution: None,
    })
}

/// Builds a `(Y(0), Y(1))` joint with the table's margins that places
/// exactly `cross` mass on the quadrant `{Y(0) <= t, Y(1) > t}`.
///
/// The four threshold quadrants get the block masses forced by `cross`
/// and the margins; within each block, mass is spread proportionally to
/// the marginal cells (a product coupling inside the block).
fn coupling_with_cross_mass(
    y_given_d: &ConditionalTable,
    scale: OutcomeScale,
    cross: f64,
) -> Result<CounterfactualJoint> {
    let t = scale.threshold;
    let n = scale.n_levels();
    let row = y_given_d.row(0);
    let col = y_given_d.row(1);
    let r = y_given_d.mass_at_or_below(0, t);
    let s = y_given_d.mass_above(1, t);
    // Block masses over (row side: low/high) x (col side: low/high);
    // tiny negatives are float dust at the Fréchet boundary.
    let blocks = [
        [(r - cross).max(0.0), cross],
        [(1.0 - r - s + cross).max(0.0), (s - cross).max(0.0)],
    ];
    let row_block_mass = [r, 1.0 - r];
    let col_block_mass = [1.0 - s, s];
    let mut cells = vec![vec![0.0; n]; n];
    for (bi, row_range) in [(0, 0..=t), (1, t + 1..=n - 1)] {
        for (bj, col_range) in [(0, 0..=t), (1, t + 1..=n - 1)] {
            let mass = blocks[bi][bj];
            if mass <= 0.0 {
                continue;
            }
            // mass <= block margin, so a positive block has positive
            // marginal mass on both sides.
            for l in row_range.clone() {
                for k in col_range.clone() {
                    cells[l][k] +=
                        mass * (row[l] / row_block_mass[bi]) * (col[k] / col_block_mass[bj]);
                }
            }
        }
    }
    CounterfactualJoint::new(JointKind::OutcomePairs, cells)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::bounds::{bounds_mediator_ordinal, bounds_simple_ordinal};
    use crate::model::{compatibility_check, Scenario};

    fn ordinal_example() -> Scenario {
        Scenario::mediator(
            OutcomeScale::new(2, 1).unwrap(),
            ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.05, 0.95]]).unwrap(),
            ConditionalTable::y_given_m(
                vec![vec![0.8, 0.1, 0.1], vec![0.25, 0.05, 0.7]],
                3,
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_joint_has_zero_pc() {
        let margin = [0.5, 0.3, 0.2];
        let joint =
            CounterfactualJoint::comonotone(JointKind::OutcomePairs, &margin, &margin).unwrap();
        let pc = true_pc_simple(&joint, OutcomeScale::new(2, 1).unwrap()).unwrap();
        assert_eq!(pc, 0.0);
    }

    #[test]
    fn fully_causal_joint_has_unit_pc() {
        let joint =
            CounterfactualJoint::anticomonotone(JointKind::OutcomePairs, &[1.0, 0.0], &[0.0, 1.0])
                .unwrap();
        assert_eq!(joint.cell(0, 1), 1.0);
        let pc = true_pc_simple(&joint, OutcomeScale::binary()).unwrap();
        assert_eq!(pc, 1.0);
    }

    #[test]
    fn product_coupling_pc_is_unexposed_low_mass() {
        // For an independent coupling the numerator factorizes, so PC
        // collapses to P(Y <= t | D = 0).
        let scenario = ordinal_example();
        let derived = scenario.outcome_given_exposure().unwrap();
        let joint = CounterfactualJoint::product(
            JointKind::OutcomePairs,
            derived.row(0),
            derived.row(1),
        )
        .unwrap();
        let pc = true_pc_simple(&joint, scenario.scale()).unwrap();
        assert_abs_diff_eq!(pc, 0.81, epsilon = 1e-12);
    }

    #[test]
    fn unchanged_mediator_means_zero_pc() {
        let m_joint = CounterfactualJoint::new(
            JointKind::MediatorPairs,
            vec![vec![0.3, 0.0], vec![0.0, 0.7]],
        )
        .unwrap();
        let star = CounterfactualJoint::product(
            JointKind::StarPairs,
            &[0.8, 0.1, 0.1],
            &[0.25, 0.05, 0.7],
        )
        .unwrap();
        let pc = true_pc_mediator(&m_joint, &star, OutcomeScale::new(2, 1).unwrap()).unwrap();
        assert_eq!(pc, 0.0);
    }

    #[test]
    fn deterministic_chain_joints_have_unit_pc() {
        let m_joint = CounterfactualJoint::new(
            JointKind::MediatorPairs,
            vec![vec![0.0, 1.0], vec![0.0, 0.0]],
        )
        .unwrap();
        let mut star_cells = vec![vec![0.0; 3]; 3];
        star_cells[0][2] = 1.0;
        let star = CounterfactualJoint::new(JointKind::StarPairs, star_cells).unwrap();
        let pc = true_pc_mediator(&m_joint, &star, OutcomeScale::new(2, 1).unwrap()).unwrap();
        assert_eq!(pc, 1.0);
    }

    #[test]
    fn product_coupling_pc_stays_inside_closed_form() {
        let scenario = ordinal_example();
        let (m_given_d, y_given_m) = scenario.mediator_tables().unwrap();
        let m_joint = CounterfactualJoint::product(
            JointKind::MediatorPairs,
            m_given_d.row(0),
            m_given_d.row(1),
        )
        .unwrap();
        let star = CounterfactualJoint::product(
            JointKind::StarPairs,
            y_given_m.row(0),
            y_given_m.row(1),
        )
        .unwrap();
        let pc = true_pc_mediator(&m_joint, &star, scenario.scale()).unwrap();
        let interval = bounds_mediator_ordinal(&scenario).unwrap();
        assert!(interval.contains(pc, 1e-12), "pc {pc} outside {interval:?}");
    }

    #[test]
    fn mediator_pc_equals_pc_of_induced_outcome_joint() {
        let scenario = ordinal_example();
        let (m_given_d, y_given_m) = scenario.mediator_tables().unwrap();
        let m_joint = CounterfactualJoint::comonotone(
            JointKind::MediatorPairs,
            m_given_d.row(0),
            m_given_d.row(1),
        )
        .unwrap();
        let star = CounterfactualJoint::anticomonotone(
            JointKind::StarPairs,
            y_given_m.row(0),
            y_given_m.row(1),
        )
        .unwrap();
        let direct = true_pc_mediator(&m_joint, &star, scenario.scale()).unwrap();
        let induced = induce_outcome_joint(&m_joint, &star).unwrap();
        let via_outcome = true_pc_simple(&induced, scenario.scale()).unwrap();
        assert_abs_diff_eq!(direct, via_outcome, epsilon = 1e-12);
    }

    #[test]
    fn simple_envelope_matches_closed_form_on_worked_margins() {
        let scenario = ordinal_example();
        let derived = scenario.outcome_given_exposure().unwrap();
        let envelope = envelope_simple(&derived, scenario.scale()).unwrap();
        let interval = bounds_simple_ordinal(&derived, scenario.scale()).unwrap();
        assert_abs_diff_eq!(envelope.min_pc, interval.lower, epsilon = 1e-12);
        assert_abs_diff_eq!(envelope.max_pc, interval.upper, epsilon = 1e-12);
        assert_abs_diff_eq!(envelope.min_pc, 0.7164179104477612, epsilon = 1e-12);
        assert_eq!(envelope.max_pc, 1.0);
        assert_eq!(envelope.method, EnvelopeMethod::FrechetExact);
    }

    #[test]
    fn envelope_witnesses_have_the_right_margins_and_values() {
        let scenario = ordinal_example();
        let derived = scenario.outcome_given_exposure().unwrap();
        let envelope = envelope_simple(&derived, scenario.scale()).unwrap();
        for (witness, value) in [(&envelope.at_min, envelope.min_pc), (&envelope.at_max, envelope.max_pc)]
        {
            let EnvelopeWitness::Outcome(joint) = witness else {
                panic!("simple envelope must carry outcome-pair witnesses");
            };
            let report =
                compatibility_check(joint, derived.row(0), derived.row(1), 1e-9).unwrap();
            assert!(report.compatible, "witness margins off: {report:?}");
            let pc = true_pc_simple(joint, scenario.scale()).unwrap();
            assert_abs_diff_eq!(pc, value, epsilon = 1e-9);
        }
    }

    #[test]
    fn identical_margins_envelope_starts_at_zero() {
        // r + s = 1 here, so the lower Fréchet term vanishes exactly.
        let flat = ConditionalTable::y_given_d(vec![vec![0.2, 0.8], vec![0.2, 0.8]], 2).unwrap();
        let envelope = envelope_simple(&flat, OutcomeScale::binary()).unwrap();
        assert_eq!(envelope.min_pc, 0.0);
        assert_abs_diff_eq!(envelope.max_pc, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn point_mass_margins_pin_envelope_to_one() {
        let table =
            ConditionalTable::y_given_d(vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]], 3)
                .unwrap();
        let envelope = envelope_simple(&table, OutcomeScale::new(2, 1).unwrap()).unwrap();
        assert_eq!((envelope.min_pc, envelope.max_pc), (1.0, 1.0));
    }

    #[test]
    fn undefined_pc_when_exposed_never_improves() {
        let table = ConditionalTable::y_given_d(vec![vec![0.5, 0.5], vec![1.0, 0.0]], 2).unwrap();
        assert_eq!(
            envelope_simple(&table, OutcomeScale::binary()).unwrap_err(),
            Error::UndefinedPc { threshold: 0 }
        );
    }
}
