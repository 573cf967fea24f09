//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when validating inputs or computing bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A table or joint entry is below zero (beyond float tolerance).
    #[error("negative probability {value} at row {row}, column {col}")]
    NegativeProbability { row: usize, col: usize, value: f64 },

    /// A conditional-table row does not sum to one within tolerance.
    #[error("row {row} sums to {sum} (deviation {deviation:e} exceeds tolerance)")]
    RowSumViolation { row: usize, sum: f64, deviation: f64 },

    /// A joint distribution's total mass is not one within tolerance.
    #[error("joint mass sums to {sum} (deviation {deviation:e} exceeds tolerance)")]
    TotalMassViolation { sum: f64, deviation: f64 },

    /// Matrix dimensions disagree with what the scale or pairing requires.
    #[error("arity mismatch in {context}: expected {expected_rows}x{expected_cols}, found {found_rows}x{found_cols}")]
    ArityMismatch {
        context: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    /// The threshold does not satisfy `0 <= t < T`.
    #[error("threshold t={threshold} out of range for outcome levels 0..={max_level} (need t < T)")]
    ThresholdOutOfRange { max_level: usize, threshold: usize },

    /// An operation got a `Simple` scenario where `Mediator` was needed,
    /// or vice versa.
    #[error("{context} requires a {expected} scenario, found {found}")]
    ScenarioKindMismatch {
        context: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    /// An operation received a joint over the wrong counterfactual pair.
    #[error("{context} requires a {expected} joint, found {found}")]
    JointKindMismatch {
        context: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    /// The risk ratio divides by `P(Y=1|D=0) = 0`.
    #[error("risk ratio undefined: P(Y=1|D=0) = 0")]
    UndefinedRiskRatio,

    /// The conditioning event `Y > t` under exposure has zero mass, so the
    /// probability of causation is conditioned on a null event.
    #[error("probability of causation undefined: P(Y>{threshold}|D=1) = 0")]
    UndefinedPc { threshold: usize },

    /// An identity the closed forms guarantee failed beyond float noise.
    /// This always signals an implementation bug, never bad input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// The requested grid resolution is outside `(0, 0.1]`.
    #[error("resolution {resolution} out of range (need 0 < resolution <= 0.1)")]
    ResolutionOutOfRange { resolution: f64 },

    /// The grid search visited no feasible point. Cannot happen for a
    /// validated scenario; signals a bug.
    #[error("no feasible grid point at resolution {resolution}")]
    InfeasibleResolution { resolution: f64 },

    /// The scenario generator exceeded its rejection budget.
    #[error("scenario generation rejected {attempts} consecutive draws")]
    DegenerateGeneration { attempts: u64 },

    /// An experiment export was requested for zero records.
    #[error("experiment produced no records")]
    EmptyExperiment,

    /// A scenario document is structurally invalid (wrong/missing tables
    /// for its kind).
    #[error("invalid scenario document: {0}")]
    InvalidDocument(String),
}
