//! Bounds for an ordinal outcome: levels 0..=T with the event Y > t.
//!
//! Uses the built-in three-level worked example and walks through the
//! quantities the mediator-based bounds are made of: the largest mass
//! any compatible joint can put on each mediator transition and on each
//! threshold-crossing outcome flip. Causation here means the exposed
//! outcome landed above the threshold but would have stayed at or below
//! it without exposure.
//!
//! Run with: cargo run --example ordinal_bounds

use pc_bounds::bounds::{bounds_simple_ordinal, dominance_report, mediator_bound_terms};
use pc_bounds::catalog::worked_example;
use pc_bounds::display::format2;

fn main() -> pc_bounds::Result<()> {
    let example = worked_example(2)?;
    let scenario = &example.scenario;
    let scale = scenario.scale();
    println!("{}", example.title);
    println!(
        "outcome levels 0..={}, event of interest Y > {}",
        scale.max_level, scale.threshold
    );
    println!();

    let derived = scenario.outcome_given_exposure()?;
    println!("induced P(Y=k | D) table:");
    for d in 0..2 {
        let row: Vec<String> = derived.row(d).iter().map(|v| format!("{v:.4}")).collect();
        println!("  D={d}:  {}", row.join("  "));
    }
    println!();

    let terms = mediator_bound_terms(scenario)?;
    println!("largest compatible transition masses:");
    println!("  mediator 0 -> 1 under exposure: {}", terms.mediator_shift_up);
    println!("  mediator 1 -> 0 under exposure: {}", terms.mediator_shift_down);
    println!("  outcome lifted across t by the mediator: {}", terms.star_benefit);
    println!("  outcome dropped across t by the mediator: {}", terms.star_harm);
    println!("  P(Y > t | D=1) = {}", terms.denominator);
    println!();

    let simple = bounds_simple_ordinal(&derived, scale)?;
    let report = dominance_report(scenario)?;
    println!(
        "margins only:  [{}, {}]  -> {} <= PC <= {}",
        simple.lower,
        simple.upper,
        format2(simple.lower),
        format2(simple.upper)
    );
    println!(
        "with mediator: [{}, {}]  -> {} <= PC <= {}",
        report.mediator_bounds.lower,
        report.mediator_bounds.upper,
        format2(report.mediator_bounds.lower),
        format2(report.mediator_bounds.upper)
    );
    println!("upper bound improvement: {}", report.upper_improvement);
    Ok(())
}
