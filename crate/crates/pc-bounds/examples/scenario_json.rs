//! The on-disk scenario format: parsing, validation, and round-trips.
//!
//! Scenarios are exchanged as small JSON documents carrying the outcome
//! scale and the observable tables. This example parses a document from
//! a string, computes its bounds, serializes the scenario back out, and
//! shows the validation errors malformed documents produce.
//!
//! Run with: cargo run --example scenario_json

use pc_bounds::bounds::bounds_for_scenario;
use pc_bounds::cli::ScenarioDocument;

fn main() -> pc_bounds::Result<()> {
    let text = r#"{
        "kind": "mediator",
        "T": 2,
        "t": 1,
        "p_m_given_d": [[0.85, 0.15], [0.05, 0.95]],
        "p_y_given_m": [[0.8, 0.1, 0.1], [0.25, 0.05, 0.7]]
    }"#;

    let doc = ScenarioDocument::from_json(text)?;
    let scenario = doc.to_scenario()?;
    let bounds = bounds_for_scenario(&scenario)?;
    println!(
        "parsed a {} scenario with outcome levels 0..={}, event Y > {}",
        doc.kind, doc.max_level, doc.threshold
    );
    println!("bounds: [{}, {}]", bounds.lower, bounds.upper);
    println!();

    // Scenario -> document -> JSON -> document round-trips exactly.
    let echoed = ScenarioDocument::from_scenario(&scenario);
    let reparsed = ScenarioDocument::from_json(&echoed.to_json())?;
    assert_eq!(echoed, reparsed);
    println!("serialized form:\n{}", echoed.to_json());
    println!();

    // Validation failures are specific about what is wrong.
    let rejects = [
        // Unknown field.
        r#"{"kind": "simple", "T": 1, "t": 0,
            "p_y_given_d": [[0.5, 0.5], [0.5, 0.5]], "note": "hi"}"#,
        // Row does not sum to one.
        r#"{"kind": "simple", "T": 1, "t": 0,
            "p_y_given_d": [[0.6, 0.6], [0.5, 0.5]]}"#,
        // Threshold leaves no level above it.
        r#"{"kind": "simple", "T": 1, "t": 1,
            "p_y_given_d": [[0.5, 0.5], [0.5, 0.5]]}"#,
        // Mediator tables on a simple document.
        r#"{"kind": "simple", "T": 1, "t": 0,
            "p_m_given_d": [[0.5, 0.5], [0.5, 0.5]]}"#,
    ];
    println!("rejected documents:");
    for text in rejects {
        let err = ScenarioDocument::from_json(text)
            .and_then(|doc| doc.to_scenario().map(|_| ()))
            .unwrap_err();
        println!("  - {err}");
    }
    Ok(())
}
