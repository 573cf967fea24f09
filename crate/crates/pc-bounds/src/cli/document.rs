//! The on-disk JSON scenario format.
//!
//! A document names its kind, the outcome scale (`T` = largest level,
//! `t` = threshold of the event `Y > t`), and the observable tables:
//!
//! ```json
//! {
//!   "kind": "mediator",
//!   "T": 1,
//!   "t": 0,
//!   "p_m_given_d": [[0.85, 0.15], [0.3, 0.7]],
//!   "p_y_given_m": [[0.8, 0.2], [0.05, 0.95]]
//! }
//! ```
//!
//! Rows are indexed by the conditioning value, 0 first. Simple documents
//! carry `p_y_given_d` instead of the two mediator tables. Unknown fields
//! are rejected, as are tables that do not belong to the declared kind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConditionalTable, OutcomeScale, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    /// `"simple"` or `"mediator"`.
    pub kind: String,
    /// Largest outcome level; outcomes range over `0..=T`.
    #[serde(rename = "T")]
    pub max_level: usize,
    /// Event threshold: the event of interest is `Y > t`.
    #[serde(rename = "t")]
    pub threshold: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_y_given_d: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_m_given_d: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_y_given_m: Option<Vec<Vec<f64>>>,
}

impl ScenarioDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|err| Error::InvalidDocument(format!("malformed scenario document: {err}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario documents always serialize")
    }

    /// Validates the document and builds the scenario it describes.
    pub fn to_scenario(&self) -> Result<Scenario> {
        let scale = OutcomeScale::new(self.max_level, self.threshold)?;
        let n = scale.n_levels();
        match self.kind.as_str() {
            "simple" => {
                if self.p_m_given_d.is_some() || self.p_y_given_m.is_some() {
                    return Err(Error::InvalidDocument(
                        "a simple document carries only p_y_given_d".into(),
                    ));
                }
                let entries = self.p_y_given_d.clone().ok_or_else(|| {
                    Error::InvalidDocument("a simple document requires p_y_given_d".into())
                })?;
                Scenario::simple(scale, ConditionalTable::y_given_d(entries, n)?)
            }
            "mediator" => {
                if self.p_y_given_d.is_some() {
                    return Err(Error::InvalidDocument(
                        "a mediator document carries p_m_given_d and p_y_given_m, \
                         not p_y_given_d"
                            .into(),
                    ));
                }
                let m_entries = self.p_m_given_d.clone().ok_or_else(|| {
                    Error::InvalidDocument("a mediator document requires p_m_given_d".into())
                })?;
                let y_entries = self.p_y_given_m.clone().ok_or_else(|| {
                    Error::InvalidDocument("a mediator document requires p_y_given_m".into())
                })?;
                Scenario::mediator(
                    scale,
                    ConditionalTable::m_given_d(m_entries)?,
                    ConditionalTable::y_given_m(y_entries, n)?,
                )
            }
            other => Err(Error::InvalidDocument(format!(
                "unknown scenario kind {other:?}; expected \"simple\" or \"mediator\""
            ))),
        }
    }

    pub fn from_scenario(scenario: &Scenario) -> Self {
        let scale = scenario.scale();
        match scenario {
            Scenario::Simple { y_given_d, .. } => ScenarioDocument {
                kind: "simple".into(),
                max_level: scale.max_level,
                threshold: scale.threshold,
                p_y_given_d: Some(y_given_d.entries().to_vec()),
                p_m_given_d: None,
                p_y_given_m: None,
            },
            Scenario::Mediator {
                m_given_d,
                y_given_m,
                ..
            } => ScenarioDocument {
                kind: "mediator".into(),
                max_level: scale.max_level,
                threshold: scale.threshold,
                p_y_given_d: None,
                p_m_given_d: Some(m_given_d.entries().to_vec()),
                p_y_given_m: Some(y_given_m.entries().to_vec()),
            },
        }
    }
}
