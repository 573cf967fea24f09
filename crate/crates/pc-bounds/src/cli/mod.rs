//! Command-line front end: scenario ingestion, bound reports, oracle
//! validation, experiments, and the built-in worked examples.
//!
//! Exit codes: 0 success; 2 input/validation error; 3 undefined PC
//! (no mass above the threshold under exposure); 4 oracle containment
//! violation; 5 worked-example mismatch against its published values;
//! 1 internal invariant failure. Errors are reported as one JSON object
//! on standard error, `{"error": {"code": ..., "message": ...}}`.

mod document;

pub use document::ScenarioDocument;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bounds::{bounds_for_scenario, dominance_report, risk_ratio};
use crate::catalog::worked_example;
use crate::display::{format2, matches_reported_2dp};
use crate::error::{Error, Result};
use crate::model::{
    BoundInterval, ConditionalTable, CounterfactualJoint, MediatorBoundTerms, OutcomeScale,
    Scenario,
};
use crate::oracle::{
    envelope_mediator, envelope_simple, sampling_check_mediator, sampling_check_simple, Envelope,
    EnvelopeMethod, EnvelopeWitness, SamplingCheck,
};
use crate::sim::{export_figure_data, run_bounds_experiment_with, GenerationMode};

/// Containment slack beyond which the oracle flags the closed forms.
const CONTAINMENT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "pc-bounds",
    version,
    about = "Bounds on the probability of causation for binary exposures, \
             with exact oracles and simulation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute closed-form PC bounds for a scenario document.
    Bounds {
        /// Path to a scenario JSON document.
        #[arg(long)]
        input: PathBuf,
        /// Emit a machine-readable JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Validate the closed forms against the exact PC envelope and
    /// random compatible couplings.
    Oracle {
        /// Path to a scenario JSON document.
        #[arg(long)]
        input: PathBuf,
        /// Grid step for the mediator envelope search, in (0, 0.1].
        #[arg(long, default_value_t = 0.01)]
        resolution: f64,
        /// Number of random compatible couplings to draw.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Seed for the coupling draws.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Emit a machine-readable JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Test hook: shrink the closed-form interval before the
        /// containment check, forcing a violation.
        #[arg(long, hide = true)]
        corrupt_bounds: bool,
    },
    /// Draw random mediation models, bound each one, and export
    /// figure-ready CSV.
    Simulate {
        /// Number of random scenarios to draw.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest outcome level; outcomes range over 0..=T.
        #[arg(long = "T", default_value_t = 2)]
        max_level: usize,
        /// Event threshold; the event of interest is Y > t.
        #[arg(long = "t", default_value_t = 1)]
        threshold: usize,
        /// Seed for scenario generation.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stratify draws so the true PC values spread evenly over [0, 1].
        #[arg(long)]
        target_pc: bool,
        /// Emit the summary as JSON (the CSV is inlined when --out is
        /// not given).
        #[arg(long)]
        json: bool,
    },
    /// Recompute a built-in worked example and compare against its
    /// published two-decimal bounds.
    Example {
        /// Which example: 1 (binary outcome) or 2 (three-level outcome).
        #[arg(long)]
        id: u32,
        /// Emit a machine-readable JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Test hook: shift one table entry by delta (compensated within
        /// its row) before computing. Format: table:row:col:delta with
        /// table "m" or "y".
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
}

/// Runs a parsed command and returns the process exit code. Errors are
/// printed to standard error as JSON.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Bounds { input, json } => cmd_bounds(&input, json),
        Command::Oracle {
            input,
            resolution,
            samples,
            seed,
            json,
            corrupt_bounds,
        } => cmd_oracle(&input, resolution, samples, seed, json, corrupt_bounds),
        Command::Simulate {
            samples,
            max_level,
            threshold,
            seed,
            out,
            target_pc,
            json,
        } => cmd_simulate(samples, max_level, threshold, seed, out.as_deref(), target_pc, json),
        Command::Example { id, json, perturb } => cmd_example(id, json, perturb.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            let code = exit_code_for(&err);
            let payload = serde_json::json!({
                "error": { "code": code, "message": err.to_string() }
            });
            eprintln!("{payload}");
            code
        }
    }
}

/// Maps library errors onto the documented exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NegativeProbability { .. }
        | Error::RowSumViolation { .. }
        | Error::TotalMassViolation { .. }
        | Error::ArityMismatch { .. }
        | Error::ThresholdOutOfRange { .. }
        | Error::ScenarioKindMismatch { .. }
        | Error::JointKindMismatch { .. }
        | Error::ResolutionOutOfRange { .. }
        | Error::DegenerateGeneration { .. }
        | Error::EmptyExperiment
        | Error::InvalidDocument(_) => 2,
        Error::UndefinedRiskRatio | Error::UndefinedPc { .. } => 3,
        Error::TheoremViolation(_) | Error::InfeasibleResolution { .. } => 1,
    }
}

fn load_document(path: &Path) -> Result<ScenarioDocument> {
    let text = fs::read_to_string(path).map_err(|err| {
        Error::InvalidDocument(format!("cannot read {}: {err}", path.display()))
    })?;
    ScenarioDocument::from_json(&text)
}

fn describe_scenario(doc: &ScenarioDocument) -> String {
    format!(
        "{} scenario, outcome levels 0..={}, event of interest Y > {}",
        doc.kind, doc.max_level, doc.threshold
    )
}

fn display_interval(bounds: &BoundInterval) -> String {
    format!("{} <= PC <= {}", format2(bounds.lower), format2(bounds.upper))
}

fn print_interval(name: &str, bounds: &BoundInterval) {
    println!("{name}: [{}, {}]  ({})", bounds.lower, bounds.upper, bounds.formula.label());
    println!("  display: {}", display_interval(bounds));
}

fn print_terms(terms: &MediatorBoundTerms) {
    println!("intermediate transition masses:");
    println!(
        "  mediator shift up    max P(M(0)=0, M(1)=1) = {}",
        terms.mediator_shift_up
    );
    println!(
        "  mediator shift down  max P(M(0)=1, M(1)=0) = {}",
        terms.mediator_shift_down
    );
    println!(
        "  star benefit         max P(Y*(0)<=t, Y*(1)>t) = {}",
        terms.star_benefit
    );
    println!(
        "  star harm            max P(Y*(0)>t, Y*(1)<=t) = {}",
        terms.star_harm
    );
    println!("  denominator          P(Y>t | D=1) = {}", terms.denominator);
    println!(
        "  numerators           lower {} / upper {}",
        terms.lower_numerator(),
        terms.upper_numerator()
    );
}

fn cmd_bounds(input: &Path, json: bool) -> Result<i32> {
    let doc = load_document(input)?;
    let scenario = doc.to_scenario()?;
    let bounds = bounds_for_scenario(&scenario)?;
    let dominance = if scenario.has_mediator() {
        Some(dominance_report(&scenario)?)
    } else {
        None
    };
    let rr = if scenario.scale().is_binary() {
        risk_ratio(&scenario.outcome_given_exposure()?).ok()
    } else {
        None
    };

    if json {
        let mut payload = serde_json::json!({
            "scenario": doc,
            "bounds": bounds,
        });
        if let Some(rr) = rr {
            payload["risk_ratio"] = rr.into();
        }
        if let Some(report) = &dominance {
            payload["dominance"] =
                serde_json::to_value(report).expect("reports always serialize");
        }
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        return Ok(0);
    }

    println!("{}", describe_scenario(&doc));
    println!();
    print_interval("bounds", &bounds);
    if let Some(terms) = &bounds.terms {
        println!();
        print_terms(terms);
    }
    if let Some(rr) = rr {
        let note = if rr > 2.0 {
            "RR > 2, so PC necessarily exceeds 1/2"
        } else {
            "RR <= 2 leaves the attributable share below certainty"
        };
        println!();
        println!("risk ratio: {rr}  ({note})");
    }
    if let Some(report) = &dominance {
        println!();
        println!("against the mediator-blind bounds:");
        println!(
            "  simple   [{}, {}]  ({})",
            report.simple_bounds.lower,
            report.simple_bounds.upper,
            display_interval(&report.simple_bounds)
        );
        println!(
            "  mediator [{}, {}]  ({})",
            report.mediator_bounds.lower,
            report.mediator_bounds.upper,
            display_interval(&report.mediator_bounds)
        );
        println!("  lower bounds equal: {}", report.lower_equal);
        println!("  upper bound improvement: {}", report.upper_improvement);
    }
    Ok(0)
}

fn format_matrix(cells: &[Vec<f64>], indent: &str) -> String {
    cells
        .iter()
        .map(|row| {
            let body = row
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect::<Vec<_>>()
                .join("  ");
            format!("{indent}{body}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn print_joint(joint: &CounterfactualJoint, indent: &str) {
    let (first, second) = joint.kind().pair_names();
    println!("{indent}{first} x {second}:");
    println!("{}", format_matrix(joint.cells(), &format!("{indent}  ")));
}

fn print_witness(label: &str, witness: &EnvelopeWitness) {
    println!("witness at the {label}:");
    match witness {
        EnvelopeWitness::Outcome(joint) => print_joint(joint, "  "),
        EnvelopeWitness::Mediation { mediator, star } => {
            print_joint(mediator, "  ");
            print_joint(star, "  ");
        }
    }
}

fn cmd_oracle(
    input: &Path,
    resolution: f64,
    samples: usize,
    seed: u64,
    json: bool,
    corrupt_bounds: bool,
) -> Result<i32> {
    let doc = load_document(input)?;
    let scenario = doc.to_scenario()?;
    let scale = scenario.scale();
    let mut closed = bounds_for_scenario(&scenario)?;
    if corrupt_bounds {
        let width = closed.width();
        closed = BoundInterval::new(
            closed.lower + 0.3 * width,
            closed.upper - 0.3 * width,
            closed.formula,
        );
    }

    let envelope: Envelope = match &scenario {
        Scenario::Simple { y_given_d, .. } => envelope_simple(y_given_d, scale)?,
        Scenario::Mediator { .. } => envelope_mediator(&scenario, resolution)?,
    };
    let check: SamplingCheck = match &scenario {
        Scenario::Simple { y_given_d, .. } => {
            sampling_check_simple(y_given_d, scale, samples, seed)?
        }
        Scenario::Mediator { .. } => sampling_check_mediator(&scenario, samples, seed)?,
    };

    let lower_slack = envelope.min_pc - closed.lower;
    let upper_slack = closed.upper - envelope.max_pc;
    let sampling_violation = (closed.lower - check.min_seen)
        .max(check.max_seen - closed.upper)
        .max(0.0);
    let contained = lower_slack >= -CONTAINMENT_TOL
        && upper_slack >= -CONTAINMENT_TOL
        && sampling_violation <= CONTAINMENT_TOL;
    let code = if contained { 0 } else { 4 };

    if json {
        let payload = serde_json::json!({
            "scenario": doc,
            "closed_bounds": closed,
            "envelope": envelope,
            "sampling": check,
            "lower_slack": lower_slack,
            "upper_slack": upper_slack,
            "containment_ok": contained,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        return Ok(code);
    }

    println!("{}", describe_scenario(&doc));
    println!();
    print_interval("closed-form bounds", &closed);
    let method = match envelope.method {
        EnvelopeMethod::FrechetExact => "exact aggregation".to_string(),
        EnvelopeMethod::GridSearch => format!(
            "grid search at resolution {} with refinement",
            envelope.resolution.unwrap_or(resolution)
        ),
    };
    println!();
    println!(
        "attainable PC envelope: [{}, {}]  ({method})",
        envelope.min_pc, envelope.max_pc
    );
    println!("  endpoint slack: lower {lower_slack}, upper {upper_slack}");
    println!();
    print_witness("minimum", &envelope.at_min);
    print_witness("maximum", &envelope.at_max);
    println!();
    println!("sampling check: {} compatible couplings, seed {seed}", check.n_samples);
    println!(
        "  observed PC range [{}, {}], worst excursion {}",
        check.min_seen, check.max_seen, sampling_violation
    );
    println!();
    if contained {
        println!("containment: OK");
    } else {
        println!("containment: VIOLATED (closed forms do not cover the attainable range)");
    }
    Ok(code)
}

fn cmd_simulate(
    samples: usize,
    max_level: usize,
    threshold: usize,
    seed: u64,
    out: Option<&Path>,
    target_pc: bool,
    json: bool,
) -> Result<i32> {
    let scale = OutcomeScale::new(max_level, threshold)?;
    let mode = if target_pc {
        GenerationMode::TargetPc
    } else {
        GenerationMode::Direct
    };
    let (records, summary) = run_bounds_experiment_with(samples, scale, seed, mode)?;
    let csv = export_figure_data(&records)?;
    if let Some(path) = out {
        fs::write(path, &csv).map_err(|err| {
            Error::InvalidDocument(format!("cannot write {}: {err}", path.display()))
        })?;
    }

    if json {
        let mut payload = serde_json::json!({
            "samples": samples,
            "T": max_level,
            "t": threshold,
            "seed": seed,
            "stratified": target_pc,
            "summary": summary,
        });
        match out {
            Some(path) => payload["csv_path"] = path.display().to_string().into(),
            None => payload["csv"] = csv.into(),
        }
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        return Ok(0);
    }

    match out {
        Some(path) => println!(
            "wrote {} records to {}",
            summary.n_samples,
            path.display()
        ),
        None => print!("{csv}"),
    }
    println!();
    println!(
        "experiment: {} samples, outcome levels 0..={max_level}, event Y > {threshold}, seed {seed}",
        summary.n_samples
    );
    println!("  mean simple gap                 {}", summary.mean_simple_gap);
    println!("  mean mediator gap               {}", summary.mean_mediator_gap);
    println!(
        "  mean abs simple midpoint error  {}",
        summary.mean_abs_midpoint_error_simple
    );
    println!(
        "  mean abs mediator midpoint error {}",
        summary.mean_abs_midpoint_error_mediator
    );
    Ok(0)
}

/// Applies the hidden `--perturb` hook: shifts `entries[row][col]` by
/// `delta` and compensates at the next column (mod width) so the row
/// still sums to one, then revalidates.
fn apply_perturbation(scenario: &Scenario, directive: &str) -> Result<Scenario> {
    let parse = || -> Option<(String, usize, usize, f64)> {
        let mut parts = directive.splitn(4, ':');
        let table = parts.next()?.to_string();
        let row = parts.next()?.parse().ok()?;
        let col = parts.next()?.parse().ok()?;
        let delta = parts.next()?.parse().ok()?;
        Some((table, row, col, delta))
    };
    let Some((table, row, col, delta)) = parse() else {
        return Err(Error::InvalidDocument(format!(
            "perturbation must be table:row:col:delta, got {directive:?}"
        )));
    };
    let Scenario::Mediator {
        scale,
        m_given_d,
        y_given_m,
    } = scenario
    else {
        return Err(Error::ScenarioKindMismatch {
            context: "perturbation hook",
            expected: "mediator",
            found: "simple",
        });
    };
    let mut m_entries = m_given_d.entries().to_vec();
    let mut y_entries = y_given_m.entries().to_vec();
    let target = match table.as_str() {
        "m" => &mut m_entries,
        "y" => &mut y_entries,
        other => {
            return Err(Error::InvalidDocument(format!(
                "perturbation table must be \"m\" or \"y\", got {other:?}"
            )))
        }
    };
    if row >= target.len() || col >= target[row].len() {
        return Err(Error::InvalidDocument(format!(
            "perturbation cell ({row}, {col}) is outside the {table} table"
        )));
    }
    let compensated = (col + 1) % target[row].len();
    target[row][col] += delta;
    target[row][compensated] -= delta;
    Scenario::mediator(
        *scale,
        ConditionalTable::m_given_d(m_entries)?,
        ConditionalTable::y_given_m(y_entries, scale.n_levels())?,
    )
}

fn cmd_example(id: u32, json: bool, perturb: Option<&str>) -> Result<i32> {
    let mut example = worked_example(id)?;
    if let Some(directive) = perturb {
        example.scenario = apply_perturbation(&example.scenario, directive)?;
    }
    let report = dominance_report(&example.scenario)?;
    let checks = [
        (
            "mediator lower",
            report.mediator_bounds.lower,
            example.reported_mediator.0,
        ),
        (
            "mediator upper",
            report.mediator_bounds.upper,
            example.reported_mediator.1,
        ),
        (
            "simple lower",
            report.simple_bounds.lower,
            example.reported_simple.0,
        ),
        (
            "simple upper",
            report.simple_bounds.upper,
            example.reported_simple.1,
        ),
    ];
    let all_pass = checks
        .iter()
        .all(|(_, computed, published)| matches_reported_2dp(*computed, *published));
    let code = if all_pass { 0 } else { 5 };

    if json {
        let checks_json: Vec<_> = checks
            .iter()
            .map(|(name, computed, published)| {
                serde_json::json!({
                    "name": name,
                    "computed": computed,
                    "display": format2(*computed),
                    "published": published,
                    "pass": matches_reported_2dp(*computed, *published),
                })
            })
            .collect();
        let payload = serde_json::json!({
            "id": example.id,
            "title": example.title,
            "scenario": ScenarioDocument::from_scenario(&example.scenario),
            "checks": checks_json,
            "pass": all_pass,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        return Ok(code);
    }

    println!("worked example {}: {}", example.id, example.title);
    for (name, computed, published) in checks {
        let verdict = if matches_reported_2dp(computed, published) {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "  {name:<15} computed {computed} (display {}), published {published:.2}  {verdict}",
            format2(computed)
        );
    }
    println!("overall: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok(code)
}
