//! Core data model: outcome scales, conditional tables, scenarios, and
//! counterfactual joints.

mod interval;
mod joint;
mod scale;
mod scenario;
mod table;

pub use interval::{BoundInterval, Formula, MediatorBoundTerms};
pub use joint::{compatibility_check, CompatibilityReport, CounterfactualJoint, JointKind};
pub use scale::OutcomeScale;
pub use scenario::Scenario;
pub use table::{
    derive_outcome_given_exposure, ConditionalTable, VarLabel, Variable, PROB_TOL,
};
