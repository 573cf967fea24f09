//! Closed-form bounds on the probability of causation.
//!
//! The probability of causation for an exposed, improved individual is
//!
//! ```text
//! PC = Pr(Y(0) <= t | D = 1, Y(1) > t)
//! ```
//!
//! The observed margins never identify PC, but they confine it to an
//! interval. This module computes those intervals:
//!
//! * [`bounds_simple_binary`] / [`bounds_simple_ordinal`]: from the
//!   outcome-given-exposure margins alone;
//! * [`bounds_mediator_binary`] / [`bounds_mediator_ordinal`]: from the
//!   finer margins available when a complete binary mediator is observed,
//!   which tighten the upper end;
//! * [`dominance_report`]: the side-by-side comparison showing the
//!   mediator never hurts — same lower bound, upper bound no worse.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    BoundInterval, ConditionalTable, Formula, MediatorBoundTerms, OutcomeScale, Scenario,
};

/// Tolerance for identities that hold exactly in real arithmetic; any
/// larger discrepancy is an implementation bug, not float noise.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Comparison of the margins-only interval against the mediator-based
/// interval for the same scenario.
///
/// For every valid mediator scenario the lower bounds coincide and the
/// mediator's upper bound is at most the margins-only one; violations
/// beyond [`IDENTITY_TOL`] are reported as errors rather than recorded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// Bounds from the derived outcome-given-exposure margins alone.
    pub simple_bounds: BoundInterval,
    /// Bounds using the mediator decomposition.
    pub mediator_bounds: BoundInterval,
    /// Whether the two lower bounds agree (always true in a returned
    /// report; kept for the audit trail).
    pub lower_equal: bool,
    /// How much the mediator tightens the upper bound (>= 0).
    pub upper_improvement: f64,
}

fn expect_binary_margins(y_given_d: &ConditionalTable) -> Result<()> {
    if y_given_d.n_rows() != 2 || y_given_d.n_cols() != 2 {
        return Err(Error::ArityMismatch {
            context: "binary outcome margins",
            expected_rows: 2,
            expected_cols: 2,
            found_rows: y_given_d.n_rows(),
            found_cols: y_given_d.n_cols(),
        });
    }
    Ok(())
}

/// The causal risk ratio `P(Y=1|D=1) / P(Y=1|D=0)` for a binary outcome.
///
/// A ratio above two puts the lower bound past one half — the
/// "more probable than not" threshold.
pub fn risk_ratio(y_given_d: &ConditionalTable) -> Result<f64> {
    expect_binary_margins(y_given_d)?;
    let baseline = y_given_d.entry(0, 1);
    if baseline <= 0.0 {
        return Err(Error::UndefinedRiskRatio);
    }
    Ok(y_given_d.entry(1, 1) / baseline)
}

/// Margins-only bounds for a binary outcome:
///
/// ```text
/// max{0, (y11 - y01) / y11}  <=  PC  <=  min{1, y00 / y11}
/// ```
///
/// where `ydk = P(Y=k|D=d)`. The lower bound is the algebraic form of
/// `1 - 1/RR`; computing it without the ratio keeps it defined even when
/// `P(Y=1|D=0) = 0` (where it equals one).
pub fn bounds_simple_binary(y_given_d: &ConditionalTable) -> Result<BoundInterval> {
    expect_binary_margins(y_given_d)?;
    let exposed_improved = y_given_d.entry(1, 1);
    if exposed_improved <= 0.0 {
        return Err(Error::UndefinedPc { threshold: 0 });
    }
    let lower = ((exposed_improved - y_given_d.entry(0, 1)) / exposed_improved).max(0.0);
    let upper = (y_given_d.entry(0, 0) / exposed_improved).min(1.0);
    Ok(BoundInterval::new(lower, upper, Formula::SimpleBinary))
}

/// Margins-only bounds for an ordinal outcome with threshold `t`:
///
/// ```text
/// max{0, (S1 - S0) / S1}  <=  PC  <=  min{1, R0 / S1}
/// ```
///
/// where `S1 = P(Y>t|D=1)`, `S0 = P(Y>t|D=0)`, `R0 = P(Y<=t|D=0)`.
pub fn bounds_simple_ordinal(
    y_given_d: &ConditionalTable,
    scale: OutcomeScale,
) -> Result<BoundInterval> {
    if y_given_d.n_rows() != 2 || y_given_d.n_cols() != scale.n_levels() {
        return Err(Error::ArityMismatch {
            context: "outcome-given-exposure margins",
            expected_rows: 2,
            expected_cols: scale.n_levels(),
            found_rows: y_given_d.n_rows(),
            found_cols: y_given_d.n_cols(),
        });
    }
    let t = scale.threshold;
    let improved_exposed = y_given_d.mass_above(1, t);
    if improved_exposed <= 0.0 {
        return Err(Error::UndefinedPc { threshold: t });
    }
    let improved_unexposed = y_given_d.mass_above(0, t);
    let lower = ((improved_exposed - improved_unexposed) / improved_exposed).max(0.0);
    let upper = (y_given_d.mass_at_or_below(0, t) / improved_exposed).min(1.0);
    Ok(BoundInterval::new(lower, upper, Formula::SimpleOrdinal))
}

/// The Fréchet transition masses driving the mediator-based bounds; see
/// [`MediatorBoundTerms`] for what each field means.
pub fn mediator_bound_terms(scenario: &Scenario) -> Result<MediatorBoundTerms> {
    let (scale, m_given_d, y_given_m) = expect_mediator(scenario, "mediator bound terms")?;
    let t = scale.threshold;
    let denominator = scenario.outcome_given_exposure()?.mass_above(1, t);
    Ok(MediatorBoundTerms {
        mediator_shift_up: m_given_d.entry(0, 0).min(m_given_d.entry(1, 1)),
        mediator_shift_down: m_given_d.entry(0, 1).min(m_given_d.entry(1, 0)),
        star_benefit: y_given_m
            .mass_at_or_below(0, t)
            .min(y_given_m.mass_above(1, t)),
        star_harm: y_given_m
            .mass_above(0, t)
            .min(y_given_m.mass_at_or_below(1, t)),
        denominator,
    })
}

/// Mediator-based bounds for a binary outcome. The upper bound sums the
/// two routes by which exposure can flip the outcome — mediator switched
/// on and beneficial, or switched off and harmful:
///
/// ```text
/// upper = (a1*a2 + (a1+b1)(a2+b2)) / y11
/// ```
///
/// with `a1 = min(P(M=0|D=0), P(M=1|D=1))`, `b1 = P(M=0|D=1) - P(M=0|D=0)`,
/// `a2 = min(P(Y=0|M=0), P(Y=1|M=1))`, `b2 = P(Y=0|M=1) - P(Y=0|M=0)`.
/// The lower bound is unchanged from [`bounds_simple_binary`] on the
/// derived margins.
pub fn bounds_mediator_binary(scenario: &Scenario) -> Result<BoundInterval> {
    let (scale, _, y_given_m) = expect_mediator(scenario, "binary mediator bounds")?;
    if !scale.is_binary() {
        return Err(Error::ArityMismatch {
            context: "binary mediator bounds",
            expected_rows: 2,
            expected_cols: 2,
            found_rows: y_given_m.n_rows(),
            found_cols: y_given_m.n_cols(),
        });
    }
    let terms = mediator_bound_terms(scenario)?;
    if terms.denominator <= 0.0 {
        return Err(Error::UndefinedPc { threshold: 0 });
    }
    let derived = scenario.outcome_given_exposure()?;
    let lower = bounds_simple_binary(&derived)?.lower;
    let upper = checked_upper(terms.upper_numerator() / terms.denominator, lower)?;
    Ok(BoundInterval::with_terms(
        lower,
        upper,
        Formula::MediatorBinary,
        terms,
    ))
}

/// Mediator-based bounds for an ordinal outcome with threshold `t`:
///
/// ```text
/// lower = max{0, c*B / S1},   upper = (b*C + (b+c)(C+B)) / S1
/// ```
///
/// with `b, b+c` the maximal mediator switch-up/switch-down masses,
/// `C, C+B` the maximal outcome benefit/harm masses across the threshold,
/// and `S1 = P(Y>t|D=1)` from the derived margins. The lower bound
/// coincides with the margins-only one; the upper is never worse.
pub fn bounds_mediator_ordinal(scenario: &Scenario) -> Result<BoundInterval> {
    let (scale, _, _) = expect_mediator(scenario, "ordinal mediator bounds")?;
    let terms = mediator_bound_terms(scenario)?;
    if terms.denominator <= 0.0 {
        return Err(Error::UndefinedPc {
            threshold: scale.threshold,
        });
    }
    let lower = (terms.lower_numerator() / terms.denominator).max(0.0);
    let upper = checked_upper(terms.upper_numerator() / terms.denominator, lower)?;
    Ok(BoundInterval::with_terms(
        lower,
        upper,
        Formula::MediatorOrdinal,
        terms,
    ))
}

/// Compares margins-only and mediator-based bounds for one scenario and
/// verifies the dominance relation between them: equal lower bounds, and
/// a mediator upper bound at most the margins-only one. A discrepancy
/// beyond [`IDENTITY_TOL`] is an implementation bug and comes back as
/// [`Error::TheoremViolation`].
pub fn dominance_report(scenario: &Scenario) -> Result<DominanceReport> {
    let (scale, _, _) = expect_mediator(scenario, "dominance comparison")?;
    let derived = scenario.outcome_given_exposure()?;
    let simple_bounds = if scale.is_binary() {
        bounds_simple_binary(&derived)?
    } else {
        bounds_simple_ordinal(&derived, scale)?
    };
    let mediator_bounds = if scale.is_binary() {
        bounds_mediator_binary(scenario)?
    } else {
        bounds_mediator_ordinal(scenario)?
    };
    let lower_gap = (simple_bounds.lower - mediator_bounds.lower).abs();
    if lower_gap > IDENTITY_TOL {
        return Err(Error::TheoremViolation(format!(
            "lower bounds should coincide, differ by {lower_gap:e}"
        )));
    }
    let upper_improvement = simple_bounds.upper - mediator_bounds.upper;
    if upper_improvement < -IDENTITY_TOL {
        return Err(Error::TheoremViolation(format!(
            "mediator upper bound exceeds margins-only upper bound by {:e}",
            -upper_improvement
        )));
    }
    Ok(DominanceReport {
        simple_bounds,
        mediator_bounds,
        lower_equal: true,
        upper_improvement: upper_improvement.max(0.0),
    })
}

/// The tightest closed form available for the scenario: margins-only
/// bounds for `Simple`, mediator-based bounds for `Mediator`, with the
/// binary formula tag when the scale is binary.
pub fn bounds_for_scenario(scenario: &Scenario) -> Result<BoundInterval> {
    match scenario {
        Scenario::Simple { scale, y_given_d } => {
            if scale.is_binary() {
                bounds_simple_binary(y_given_d)
            } else {
                bounds_simple_ordinal(y_given_d, *scale)
            }
        }
        Scenario::Mediator { scale, .. } => {
            if scale.is_binary() {
                bounds_mediator_binary(scenario)
            } else {
                bounds_mediator_ordinal(scenario)
            }
        }
    }
}

/// Clamps a mediator upper bound into `[lower, 1]`, tolerating only
/// float noise: both caps are provable in real arithmetic, so a breach
/// beyond [`IDENTITY_TOL`] means a bug.
fn checked_upper(raw: f64, lower: f64) -> Result<f64> {
    if raw > 1.0 + IDENTITY_TOL {
        return Err(Error::TheoremViolation(format!(
            "mediator upper bound {raw} exceeds one beyond float noise"
        )));
    }
    if raw < lower - IDENTITY_TOL {
        return Err(Error::TheoremViolation(format!(
            "mediator upper bound {raw} fell below lower bound {lower}"
        )));
    }
    Ok(raw.clamp(lower, 1.0))
}

fn expect_mediator<'a>(
    scenario: &'a Scenario,
    context: &'static str,
) -> Result<(OutcomeScale, &'a ConditionalTable, &'a ConditionalTable)> {
    match scenario {
        Scenario::Mediator {
            scale,
            m_given_d,
            y_given_m,
        } => Ok((*scale, m_given_d, y_given_m)),
        Scenario::Simple { .. } => Err(Error::ScenarioKindMismatch {
            context,
            expected: "mediator",
            found: "simple",
        }),
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    /// Hypothetical drug trial: exposure raises a binary mediator from
    /// 0.15 to 0.7, and the mediator raises recovery from 0.2 to 0.95.
    fn binary_example() -> Scenario {
        Scenario::mediator(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![0.85, 0.15], vec![0.3, 0.7]]).unwrap(),
            ConditionalTable::y_given_m(vec![vec![0.8, 0.2], vec![0.05, 0.95]], 2).unwrap(),
        )
        .unwrap()
    }

    /// Three-level outcome (0 worst, 2 best), event of interest Y = 2.
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
    fn risk_ratio_on_derived_binary_margins() {
        let derived = binary_example().outcome_given_exposure().unwrap();
        assert_abs_diff_eq!(risk_ratio(&derived).unwrap(), 2.32, epsilon = 1e-12);
    }

    #[test]
    fn risk_ratio_of_no_effect_is_one() {
        let flat = ConditionalTable::y_given_d(vec![vec![0.6, 0.4], vec![0.6, 0.4]], 2).unwrap();
        assert_abs_diff_eq!(risk_ratio(&flat).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn risk_ratio_undefined_at_zero_baseline() {
        let table = ConditionalTable::y_given_d(vec![vec![1.0, 0.0], vec![0.4, 0.6]], 2).unwrap();
        assert_eq!(risk_ratio(&table).unwrap_err(), Error::UndefinedRiskRatio);
    }

    #[test]
    fn doubled_risk_puts_lower_bound_at_one_half() {
        let table = ConditionalTable::y_given_d(vec![vec![0.6, 0.4], vec![0.2, 0.8]], 2).unwrap();
        assert_abs_diff_eq!(risk_ratio(&table).unwrap(), 2.0, epsilon = 1e-12);
        let interval = bounds_simple_binary(&table).unwrap();
        assert_abs_diff_eq!(interval.lower, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn simple_binary_bounds_on_derived_margins() {
        let derived = binary_example().outcome_given_exposure().unwrap();
        let interval = bounds_simple_binary(&derived).unwrap();
        assert_abs_diff_eq!(interval.lower, 0.5689655172413793, epsilon = 1e-12);
        assert_abs_diff_eq!(interval.upper, 0.9482758620689655, epsilon = 1e-12);
        assert_eq!(interval.formula, Formula::SimpleBinary);
    }

    #[test]
    fn simple_binary_lower_is_zero_without_effect() {
        let flat = ConditionalTable::y_given_d(vec![vec![0.6, 0.4], vec![0.6, 0.4]], 2).unwrap();
        assert_eq!(bounds_simple_binary(&flat).unwrap().lower, 0.0);
    }

    #[test]
    fn deterministic_effect_pins_bounds_to_one() {
        let table = ConditionalTable::y_given_d(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap();
        let interval = bounds_simple_binary(&table).unwrap();
        assert_eq!((interval.lower, interval.upper), (1.0, 1.0));
    }

    #[test]
    fn undefined_when_no_exposed_improvement() {
        let table = ConditionalTable::y_given_d(vec![vec![0.5, 0.5], vec![1.0, 0.0]], 2).unwrap();
        assert_eq!(
            bounds_simple_binary(&table).unwrap_err(),
            Error::UndefinedPc { threshold: 0 }
        );
    }

    #[test]
    fn mediator_binary_bounds_match_hand_computation() {
        let interval = bounds_mediator_binary(&binary_example()).unwrap();
        assert_abs_diff_eq!(interval.lower, 0.5689655172413793, epsilon = 1e-12);
        assert_abs_diff_eq!(interval.upper, 0.7827586206896552, epsilon = 1e-12);
        let terms = interval.terms.unwrap();
        assert_abs_diff_eq!(terms.mediator_shift_up, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.mediator_shift_down, 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.star_benefit, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.star_harm, 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.denominator, 0.725, epsilon = 1e-15);
    }

    #[test]
    fn deterministic_chain_pins_mediator_bounds_to_one() {
        let scenario = Scenario::mediator(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
            ConditionalTable::y_given_m(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap(),
        )
        .unwrap();
        let interval = bounds_mediator_binary(&scenario).unwrap();
        assert_eq!((interval.lower, interval.upper), (1.0, 1.0));
    }

    #[test]
    fn unresponsive_mediator_gives_zero_lower_bound() {
        let scenario = Scenario::mediator(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![0.4, 0.6], vec![0.4, 0.6]]).unwrap(),
            ConditionalTable::y_given_m(vec![vec![0.8, 0.2], vec![0.05, 0.95]], 2).unwrap(),
        )
        .unwrap();
        assert_eq!(bounds_mediator_binary(&scenario).unwrap().lower, 0.0);
    }

    #[test]
    fn simple_ordinal_bounds_on_derived_margins() {
        let scenario = ordinal_example();
        let derived = scenario.outcome_given_exposure().unwrap();
        let interval = bounds_simple_ordinal(&derived, scenario.scale()).unwrap();
        assert_abs_diff_eq!(interval.lower, 0.7164179104477612, epsilon = 1e-12);
        assert_eq!(interval.upper, 1.0);
    }

    #[test]
    fn simple_ordinal_lower_is_zero_without_effect() {
        let flat = ConditionalTable::y_given_d(
            vec![vec![0.5, 0.3, 0.2], vec![0.5, 0.3, 0.2]],
            3,
        )
        .unwrap();
        let scale = OutcomeScale::new(2, 1).unwrap();
        assert_eq!(bounds_simple_ordinal(&flat, scale).unwrap().lower, 0.0);
    }

    #[test]
    fn mediator_ordinal_bounds_match_hand_computation() {
        let interval = bounds_mediator_ordinal(&ordinal_example()).unwrap();
        assert_abs_diff_eq!(interval.lower, 0.7164179104477612, epsilon = 1e-12);
        assert_abs_diff_eq!(interval.upper, 0.8955223880597015, epsilon = 1e-12);
        let terms = interval.terms.unwrap();
        assert_abs_diff_eq!(terms.mediator_shift_up, 0.85, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.mediator_shift_down, 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.star_benefit, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.star_harm, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(terms.denominator, 0.67, epsilon = 1e-12);
    }

    #[test]
    fn dominance_on_binary_example() {
        let report = dominance_report(&binary_example()).unwrap();
        assert!(report.lower_equal);
        assert_abs_diff_eq!(
            report.upper_improvement,
            0.1655172413793103,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dominance_on_ordinal_example() {
        let report = dominance_report(&ordinal_example()).unwrap();
        assert!(report.lower_equal);
        assert_abs_diff_eq!(
            report.upper_improvement,
            0.1044776119402985,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dominance_of_deterministic_chain_is_zero_improvement() {
        let scenario = Scenario::mediator(
            OutcomeScale::binary(),
            ConditionalTable::m_given_d(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
            ConditionalTable::y_given_m(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap(),
        )
        .unwrap();
        let report = dominance_report(&scenario).unwrap();
        assert_eq!(report.simple_bounds.lower, 1.0);
        assert_eq!(report.mediator_bounds.upper, 1.0);
        assert_eq!(report.upper_improvement, 0.0);
    }

    #[test]
    fn dominance_requires_a_mediator_scenario() {
        let scenario = Scenario::simple(
            OutcomeScale::binary(),
            ConditionalTable::y_given_d(vec![vec![0.6, 0.4], vec![0.2, 0.8]], 2).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            dominance_report(&scenario).unwrap_err(),
            Error::ScenarioKindMismatch { .. }
        ));
    }

    #[test]
    fn scenario_dispatch_picks_the_tightest_formula() {
        let simple = Scenario::simple(
            OutcomeScale::binary(),
            ConditionalTable::y_given_d(vec![vec![0.6, 0.4], vec![0.2, 0.8]], 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            bounds_for_scenario(&simple).unwrap().formula,
            Formula::SimpleBinary
        );
        assert_eq!(
            bounds_for_scenario(&ordinal_example()).unwrap().formula,
            Formula::MediatorOrdinal
        );
    }
}
