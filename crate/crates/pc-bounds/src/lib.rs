//! Bounds on the probability of causation.
//!
//! Given an exposed individual whose outcome exceeded a threshold, the
//! probability of causation asks: would the outcome have stayed at or
//! below the threshold without exposure? The observed margins never
//! identify this probability, but they confine it to an interval, and a
//! complete mediator tightens the interval's upper end.
//!
//! The crate is organized as:
//!
//! * [`model`]: scales, conditional tables, scenarios, counterfactual
//!   joints, and bound intervals;
//! * [`bounds`]: the closed-form intervals for binary and ordinal
//!   outcomes, with and without a mediator;
//! * [`oracle`]: independent numerical envelopes that search over all
//!   counterfactual joints compatible with the observed margins;
//! * [`sim`]: a reproducible experiment harness that generates random
//!   mediation scenarios and compares true values against the bounds;
//! * [`display`]: two-decimal reporting helpers;
//! * [`catalog`]: built-in worked examples with published reference
//!   values;
//! * [`cli`]: the JSON document format and the command-line front end.
//!
//! ```
//! use pc_bounds::bounds::bounds_simple_binary;
//! use pc_bounds::model::ConditionalTable;
//!
//! let y_given_d = ConditionalTable::y_given_d(
//!     vec![vec![0.7, 0.3], vec![0.2, 0.8]],
//!     2,
//! )?;
//! let interval = bounds_simple_binary(&y_given_d)?;
//! assert!(interval.lower > 0.5); // relative risk 8/3 exceeds two
//! # Ok::<(), pc_bounds::Error>(())
//! ```

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod display;
pub mod error;
pub mod model;
pub mod oracle;
pub mod sim;

pub use error::{Error, Result};
