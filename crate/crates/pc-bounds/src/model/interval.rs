//! Bound intervals and the intermediate quantities behind the
//! mediator-based bounds.

use serde::{Deserialize, Serialize};

/// Which closed form produced a [`BoundInterval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// Binary outcome, exposure margins only.
    SimpleBinary,
    /// Binary outcome with a complete binary mediator.
    MediatorBinary,
    /// Ordinal outcome, exposure margins only.
    SimpleOrdinal,
    /// Ordinal outcome with a complete binary mediator.
    MediatorOrdinal,
    /// Numerical search over all compatible counterfactual joints.
    OracleEnvelope,
}

impl Formula {
    pub fn label(&self) -> &'static str {
        match self {
            Formula::SimpleBinary => "simple binary",
            Formula::MediatorBinary => "mediator binary",
            Formula::SimpleOrdinal => "simple ordinal",
            Formula::MediatorOrdinal => "mediator ordinal",
            Formula::OracleEnvelope => "oracle envelope",
        }
    }
}

/// The intermediate quantities behind the mediator-based bounds.
///
/// Each of the first four fields is a Fréchet limit: the largest mass any
/// joint distribution compatible with the observed margins can place on
/// one transition event. Writing `m(d)` for the mediator under exposure
/// `d` and `Y*(m)` for the outcome under mediator `m`:
///
/// * `mediator_shift_up`: max mass on `M(0)=0, M(1)=1`, i.e.
///   `min(P(M=0|D=0), P(M=1|D=1))` — exposure switches the mediator on.
/// * `mediator_shift_down`: max mass on `M(0)=1, M(1)=0`, i.e.
///   `min(P(M=1|D=0), P(M=0|D=1))` — exposure switches the mediator off.
/// * `star_benefit`: max mass on `Y*(0) <= t, Y*(1) > t`, i.e.
///   `min(P(Y<=t|M=0), P(Y>t|M=1))` — the mediator lifts the outcome
///   across the threshold.
/// * `star_harm`: max mass on `Y*(0) > t, Y*(1) <= t`, i.e.
///   `min(P(Y>t|M=0), P(Y<=t|M=1))` — the mediator drops the outcome
///   across the threshold.
///
/// The upper bound's numerator is
/// `shift_up * benefit + shift_down * harm` (the two causal routes to
/// "exposure flipped the outcome upward"), and the lower bound's is
/// `(shift_down - shift_up) * (harm - benefit)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediatorBoundTerms {
    pub mediator_shift_up: f64,
    pub mediator_shift_down: f64,
    pub star_benefit: f64,
    pub star_harm: f64,
    /// `P(Y > t | D = 1)`, the conditioning mass of the probability of
    /// causation.
    pub denominator: f64,
}

impl MediatorBoundTerms {
    /// Numerator of the mediator-based upper bound before clamping.
    pub fn upper_numerator(&self) -> f64 {
        self.mediator_shift_up * self.star_benefit + self.mediator_shift_down * self.star_harm
    }

    /// Numerator of the mediator-based lower bound before clamping.
    pub fn lower_numerator(&self) -> f64 {
        (self.mediator_shift_down - self.mediator_shift_up)
            * (self.star_harm - self.star_benefit)
    }
}

/// A lower/upper bound pair on the probability of causation, together
/// with the formula that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
    pub formula: Formula,
    /// Present only for the mediator-based formulas.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<MediatorBoundTerms>,
}

impl BoundInterval {
    pub fn new(lower: f64, upper: f64, formula: Formula) -> Self {
        BoundInterval {
            lower,
            upper,
            formula,
            terms: None,
        }
    }

    pub fn with_terms(lower: f64, upper: f64, formula: Formula, terms: MediatorBoundTerms) -> Self {
        BoundInterval {
            lower,
            upper,
            formula,
            terms: Some(terms),
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Whether `value` lies inside the interval, allowing `tol` slack at
    /// both ends.
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        value >= self.lower - tol && value <= self.upper + tol
    }
}
