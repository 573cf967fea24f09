//! Bounds for a binary outcome, with and without a complete mediator.
//!
//! Builds the observable tables of a small mediation model by hand —
//! P(M|D) and P(Y|M), everything binary — and shows how much the
//! mediator tightens the interval on the probability of causation:
//! knowing only the induced P(Y|D) margins gives [0.57, 0.95], while
//! routing through the mediator sharpens the upper end to 0.78.
//!
//! Run with: cargo run --example binary_bounds

use pc_bounds::bounds::{bounds_simple_binary, dominance_report, risk_ratio};
use pc_bounds::display::format2;
use pc_bounds::model::{ConditionalTable, OutcomeScale, Scenario};

fn main() -> pc_bounds::Result<()> {
    // Exposure flips the mediator on most of the time...
    let m_given_d = ConditionalTable::m_given_d(vec![
        vec![0.85, 0.15], // P(M=0|D=0), P(M=1|D=0)
        vec![0.3, 0.7],   // P(M=0|D=1), P(M=1|D=1)
    ])?;
    // ...and the mediator nearly determines the outcome.
    let y_given_m = ConditionalTable::y_given_m(
        vec![
            vec![0.8, 0.2],   // P(Y=0|M=0), P(Y=1|M=0)
            vec![0.05, 0.95], // P(Y=0|M=1), P(Y=1|M=1)
        ],
        2,
    )?;
    let scenario = Scenario::mediator(OutcomeScale::binary(), m_given_d, y_given_m)?;

    // The margins an exposure-only study would see.
    let y_given_d = scenario.outcome_given_exposure()?;
    println!("induced outcome margins:");
    println!("  P(Y=1 | D=0) = {}", y_given_d.entry(0, 1));
    println!("  P(Y=1 | D=1) = {}", y_given_d.entry(1, 1));
    println!("  risk ratio   = {}", risk_ratio(&y_given_d)?);
    println!();

    let simple = bounds_simple_binary(&y_given_d)?;
    let report = dominance_report(&scenario)?;
    println!(
        "margins only:    {} <= PC <= {}",
        format2(simple.lower),
        format2(simple.upper)
    );
    println!(
        "with mediator:   {} <= PC <= {}",
        format2(report.mediator_bounds.lower),
        format2(report.mediator_bounds.upper)
    );
    println!(
        "upper bound improvement: {} (lower bounds always coincide: {})",
        report.upper_improvement, report.lower_equal
    );
    Ok(())
}
