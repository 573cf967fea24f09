//! Reproducible random experiments comparing the closed-form bounds with
//! the exact PC of fully specified counterfactual models.
//!
//! Each sample drawn here is a complete counterfactual specification — a
//! `(M(0), M(1))` joint and a `(Y*(0), Y*(1))` joint, each uniform on its
//! probability simplex — so its true PC is computable exactly. The
//! observable scenario is then read off the joints' margins, both bound
//! pairs are evaluated on it, and the experiment records how tightly the
//! bounds track the truth.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution};
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_mediator_ordinal, bounds_simple_ordinal};
use crate::error::{Error, Result};
use crate::model::{
    BoundInterval, ConditionalTable, CounterfactualJoint, JointKind, OutcomeScale, Scenario,
};
use crate::oracle::true_pc_mediator;

/// Smallest acceptable `P(Y > t | D = 1)`: draws conditioning on less
/// mass than this are rejected as numerically meaningless.
pub const MIN_DENOMINATOR: f64 = 0.05;

/// Consecutive rejected draws after which generation gives up.
pub const MAX_REJECTIONS: u64 = 100_000;

/// A randomly drawn counterfactual model together with the scenario it
/// induces and its exact PC.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledScenario {
    /// The observable mediator scenario (margins of the two joints).
    pub scenario: Scenario,
    pub m_joint: CounterfactualJoint,
    pub star_joint: CounterfactualJoint,
    /// Exact PC of the full specification.
    pub true_pc: f64,
}

/// How experiment samples are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationMode {
    /// Accept every draw; the PC distribution is whatever the uniform
    /// joints induce.
    Direct,
    /// Stratify: sample `i` of `n` is redrawn until its PC lands in
    /// `[i/n, (i+1)/n)`, giving an even spread of true values.
    TargetPc,
}

/// One experiment sample: the true PC against both bound pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    /// Draw index before sorting by true PC.
    pub sample_id: u64,
    pub true_pc: f64,
    pub simple_bounds: BoundInterval,
    pub mediator_bounds: BoundInterval,
    pub simple_midpoint: f64,
    pub mediator_midpoint: f64,
    pub simple_gap: f64,
    pub mediator_gap: f64,
}

/// Mean tightness statistics over an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub n_samples: usize,
    pub mean_simple_gap: f64,
    pub mean_mediator_gap: f64,
    pub mean_abs_midpoint_error_simple: f64,
    pub mean_abs_midpoint_error_mediator: f64,
}

fn dirichlet_cells(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    let flat = Dirichlet::new_with_size(1.0, rows * cols)
        .expect("uniform Dirichlet with >= 2 cells is always valid")
        .sample(rng);
    flat.chunks(cols).map(|chunk| chunk.to_vec()).collect()
}

/// One accepted draw from the given generator stream.
fn draw_with_rng(rng: &mut ChaCha8Rng, scale: OutcomeScale) -> Result<SampledScenario> {
    let n = scale.n_levels();
    let t = scale.threshold;
    for _ in 0..MAX_REJECTIONS {
        let m_joint =
            CounterfactualJoint::new(JointKind::MediatorPairs, dirichlet_cells(rng, 2, 2))?;
        let star_joint =
            CounterfactualJoint::new(JointKind::StarPairs, dirichlet_cells(rng, n, n))?;
        let m_col = m_joint.col_margin();
        let star_row = star_joint.row_margin();
        let star_col = star_joint.col_margin();
        let denominator: f64 = (t + 1..n)
            .map(|k| m_col[0] * star_row[k] + m_col[1] * star_col[k])
            .sum();
        if denominator < MIN_DENOMINATOR {
            continue;
        }
        let true_pc = true_pc_mediator(&m_joint, &star_joint, scale)?;
        let scenario = Scenario::mediator(
            scale,
            ConditionalTable::m_given_d(vec![m_joint.row_margin(), m_col])?,
            ConditionalTable::y_given_m(vec![star_row, star_col], n)?,
        )?;
        return Ok(SampledScenario {
            scenario,
            m_joint,
            star_joint,
            true_pc,
        });
    }
    Err(Error::DegenerateGeneration {
        attempts: MAX_REJECTIONS,
    })
}

/// Draws one random mediation model for the scale, rejecting draws whose
/// conditioning mass `P(Y > t | D = 1)` falls below [`MIN_DENOMINATOR`].
/// Deterministic in the seed.
pub fn sample_mediator_scenario(seed: u64, scale: OutcomeScale) -> Result<SampledScenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_with_rng(&mut rng, scale)
}

/// Runs an experiment with a caller-supplied generator; `generator(i)`
/// must yield the `i`-th sample. Records come back sorted by true PC.
pub fn run_experiment_with_generator<F>(
    n_samples: usize,
    generator: F,
) -> Result<(Vec<ExperimentRecord>, ExperimentSummary)>
where
    F: Fn(u64) -> Result<SampledScenario>,
{
    if n_samples == 0 {
        return Err(Error::EmptyExperiment);
    }
    let mut records = Vec::with_capacity(n_samples);
    for i in 0..n_samples as u64 {
        let sample = generator(i)?;
        let scale = sample.scenario.scale();
        let derived = sample.scenario.outcome_given_exposure()?;
        let simple_bounds = bounds_simple_ordinal(&derived, scale)?;
        let mediator_bounds = bounds_mediator_ordinal(&sample.scenario)?;
        records.push(ExperimentRecord {
            sample_id: i,
            true_pc: sample.true_pc,
            simple_midpoint: (simple_bounds.lower + simple_bounds.upper) / 2.0,
            mediator_midpoint: (mediator_bounds.lower + mediator_bounds.upper) / 2.0,
            simple_gap: simple_bounds.width(),
            mediator_gap: mediator_bounds.width(),
            simple_bounds,
            mediator_bounds,
        });
    }
    records.sort_by(|a, b| a.true_pc.total_cmp(&b.true_pc));
    let summary = summarize(&records)?;
    Ok((records, summary))
}

/// Mixes the experiment seed with a sample index into an independent
/// per-sample stream seed (SplitMix64 finalizer). A plain `seed ^ index`
/// would make adjacent base seeds generate permutations of the same
/// sample set, which the post-hoc sort by true PC collapses into
/// byte-identical output.
fn stream_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the standard experiment: `n_samples` independent draws at the
/// given scale, bounds computed per sample, records sorted by true PC.
/// Sample `i` uses its own generator stream derived from `(seed, i)`, so
/// the result is reproducible and independent of evaluation order.
pub fn run_bounds_experiment(
    n_samples: usize,
    scale: OutcomeScale,
    seed: u64,
) -> Result<(Vec<ExperimentRecord>, ExperimentSummary)> {
    run_bounds_experiment_with(n_samples, scale, seed, GenerationMode::Direct)
}

/// [`run_bounds_experiment`] with an explicit generation mode.
pub fn run_bounds_experiment_with(
    n_samples: usize,
    scale: OutcomeScale,
    seed: u64,
    mode: GenerationMode,
) -> Result<(Vec<ExperimentRecord>, ExperimentSummary)> {
    run_experiment_with_generator(n_samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, i));
        match mode {
            GenerationMode::Direct => draw_with_rng(&mut rng, scale),
            GenerationMode::TargetPc => {
                let lo = i as f64 / n_samples as f64;
                let hi = (i + 1) as f64 / n_samples as f64;
                for _ in 0..MAX_REJECTIONS {
                    let sample = draw_with_rng(&mut rng, scale)?;
                    if sample.true_pc >= lo && (sample.true_pc < hi || hi >= 1.0) {
                        return Ok(sample);
                    }
                }
                Err(Error::DegenerateGeneration {
                    attempts: MAX_REJECTIONS,
                })
            }
        }
    })
}

fn summarize(records: &[ExperimentRecord]) -> Result<ExperimentSummary> {
    if records.is_empty() {
        return Err(Error::EmptyExperiment);
    }
    let n = records.len() as f64;
    let mean = |f: fn(&ExperimentRecord) -> f64| records.iter().map(f).sum::<f64>() / n;
    Ok(ExperimentSummary {
        n_samples: records.len(),
        mean_simple_gap: mean(|r| r.simple_gap),
        mean_mediator_gap: mean(|r| r.mediator_gap),
        mean_abs_midpoint_error_simple: mean(|r| (r.simple_midpoint - r.true_pc).abs()),
        mean_abs_midpoint_error_mediator: mean(|r| (r.mediator_midpoint - r.true_pc).abs()),
    })
}

/// Serializes sorted records to the plot-ready CSV format:
///
/// ```text
/// sample_index,true_pc,med_lower,med_upper,simple_mid,med_mid
/// ```
///
/// with six fixed fractional digits per value. `sample_index` is the
/// post-sort row position.
pub fn export_figure_data(records: &[ExperimentRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyExperiment);
    }
    let mut out = String::from("sample_index,true_pc,med_lower,med_upper,simple_mid,med_mid\n");
    for (index, record) in records.iter().enumerate() {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            index,
            record.true_pc,
            record.mediator_bounds.lower,
            record.mediator_bounds.upper,
            record.simple_midpoint,
            record.mediator_midpoint,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;

    const SCALE: OutcomeScale = OutcomeScale {
        max_level: 2,
        threshold: 1,
    };

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let a = sample_mediator_scenario(99, SCALE).unwrap();
        let b = sample_mediator_scenario(99, SCALE).unwrap();
        assert_eq!(a, b);
        let c = sample_mediator_scenario(100, SCALE).unwrap();
        assert_ne!(a.true_pc, c.true_pc);
    }

    #[test]
    fn sampled_denominator_respects_the_floor() {
        for seed in 0..50 {
            let sample = sample_mediator_scenario(seed, SCALE).unwrap();
            let derived = sample.scenario.outcome_given_exposure().unwrap();
            assert!(derived.mass_above(1, SCALE.threshold) >= MIN_DENOMINATOR);
        }
    }

    #[test]
    fn true_pc_matches_the_threshold_two_display_formula() {
        // At T=2, t=1 the general expression specializes to
        // ((y*02+y*12) m01 + (y*20+y*21) m10) / (y*+2 m+1 + y*2+ m+0).
        let sample = sample_mediator_scenario(7, SCALE).unwrap();
        let m = &sample.m_joint;
        let star = &sample.star_joint;
        let numerator = (star.cell(0, 2) + star.cell(1, 2)) * m.cell(0, 1)
            + (star.cell(2, 0) + star.cell(2, 1)) * m.cell(1, 0);
        let denominator = star.col_margin()[2] * m.col_margin()[1]
            + star.row_margin()[2] * m.col_margin()[0];
        assert_abs_diff_eq!(sample.true_pc, numerator / denominator, epsilon = 1e-12);
    }

    #[test]
    fn records_are_sorted_and_contained() {
        let (records, summary) = run_bounds_experiment(60, SCALE, 42).unwrap();
        assert_eq!(records.len(), 60);
        for pair in records.windows(2) {
            assert!(pair[0].true_pc <= pair[1].true_pc);
        }
        for r in &records {
            assert!(r.simple_bounds.contains(r.true_pc, 1e-9), "{r:?}");
            assert!(r.mediator_bounds.contains(r.true_pc, 1e-9), "{r:?}");
            assert!(r.mediator_gap <= r.simple_gap + 1e-12);
        }
        assert!(summary.mean_mediator_gap < summary.mean_simple_gap);
    }

    #[test]
    fn rerun_is_identical_and_reseed_is_not() {
        let (a, _) = run_bounds_experiment(20, SCALE, 5).unwrap();
        let (b, _) = run_bounds_experiment(20, SCALE, 5).unwrap();
        assert_eq!(a, b);
        let (c, _) = run_bounds_experiment(20, SCALE, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn summary_means_are_arithmetic_means() {
        let (records, summary) = run_bounds_experiment(30, SCALE, 12).unwrap();
        let n = records.len() as f64;
        let mean_simple: f64 = records.iter().map(|r| r.simple_gap).sum::<f64>() / n;
        let mean_med: f64 = records.iter().map(|r| r.mediator_gap).sum::<f64>() / n;
        assert_abs_diff_eq!(summary.mean_simple_gap, mean_simple, epsilon = 1e-12);
        assert_abs_diff_eq!(summary.mean_mediator_gap, mean_med, epsilon = 1e-12);
    }

    #[test]
    fn target_pc_mode_hits_each_bin() {
        let (records, _) =
            run_bounds_experiment_with(4, SCALE, 3, GenerationMode::TargetPc).unwrap();
        // Records are sorted by true PC, and with one bin per quartile
        // the sorted order matches the bin order.
        for (i, r) in records.iter().enumerate() {
            let lo = i as f64 / 4.0;
            let hi = (i + 1) as f64 / 4.0;
            assert!(
                r.true_pc >= lo && r.true_pc < hi + 1e-12,
                "record {i} pc {} outside [{lo}, {hi})",
                r.true_pc
            );
        }
    }

    #[test]
    fn deterministic_generator_collapses_gaps() {
        // Injected generator: the deterministic chain M = D, Y = 2 M.
        let chain = |_: u64| -> Result<SampledScenario> {
            let m_joint = CounterfactualJoint::new(
                JointKind::MediatorPairs,
                vec![vec![0.0, 1.0], vec![0.0, 0.0]],
            )?;
            let mut star_cells = vec![vec![0.0; 3]; 3];
            star_cells[0][2] = 1.0;
            let star_joint = CounterfactualJoint::new(JointKind::StarPairs, star_cells)?;
            let true_pc = true_pc_mediator(&m_joint, &star_joint, SCALE)?;
            let scenario = Scenario::mediator(
                SCALE,
                ConditionalTable::m_given_d(vec![m_joint.row_margin(), m_joint.col_margin()])?,
                ConditionalTable::y_given_m(
                    vec![star_joint.row_margin(), star_joint.col_margin()],
                    3,
                )?,
            )?;
            Ok(SampledScenario {
                scenario,
                m_joint,
                star_joint,
                true_pc,
            })
        };
        let (records, summary) = run_experiment_with_generator(1, chain).unwrap();
        assert_eq!(records[0].true_pc, 1.0);
        assert_eq!(records[0].simple_gap, 0.0);
        assert_eq!(records[0].mediator_gap, 0.0);
        assert_eq!(records[0].mediator_midpoint, 1.0);
        assert_eq!(summary.mean_simple_gap, 0.0);
    }

    #[test]
    fn csv_export_has_the_pinned_header_and_round_trips() {
        let (records, _) = run_bounds_experiment(10, SCALE, 8).unwrap();
        let csv = export_figure_data(&records).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "sample_index,true_pc,med_lower,med_upper,simple_mid,med_mid"
        );
        let mut n_rows = 0;
        for (i, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 6);
            assert_eq!(fields[0].parse::<usize>().unwrap(), i);
            let true_pc: f64 = fields[1].parse().unwrap();
            assert_abs_diff_eq!(true_pc, records[i].true_pc, epsilon = 5e-7);
            let med_lower: f64 = fields[2].parse().unwrap();
            assert_abs_diff_eq!(med_lower, records[i].mediator_bounds.lower, epsilon = 5e-7);
            n_rows += 1;
        }
        assert_eq!(n_rows, 10);
    }

    #[test]
    fn empty_experiment_is_rejected() {
        assert_eq!(
            export_figure_data(&[]).unwrap_err(),
            Error::EmptyExperiment
        );
        assert!(matches!(
            run_bounds_experiment(0, SCALE, 1).unwrap_err(),
            Error::EmptyExperiment
        ));
    }
}
