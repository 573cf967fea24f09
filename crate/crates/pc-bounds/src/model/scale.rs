//! Ordinal outcome support and the threshold defining the event of interest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The outcome support `{0, 1, ..., T}` together with the threshold `t`
/// that defines the event of interest, `Y > t`.
///
/// Higher levels mean a better outcome; the question asked of every bound
/// in this crate is whether the observed `Y > t` was caused by the exposure.
/// Callers with the opposite coding should relabel their levels before
/// building a scale. The binary case is exactly `(T=1, t=0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeScale {
    /// Largest outcome level `T`; the outcome takes values `0..=T`.
    pub max_level: usize,
    /// Threshold `t` with `0 <= t < T`; the event of interest is `Y > t`.
    pub threshold: usize,
}

impl OutcomeScale {
    /// Builds a scale, rejecting thresholds outside `0 <= t < T`.
    pub fn new(max_level: usize, threshold: usize) -> Result<Self> {
        if max_level < 1 || threshold >= max_level {
            return Err(Error::ThresholdOutOfRange {
                max_level,
                threshold,
            });
        }
        Ok(OutcomeScale {
            max_level,
            threshold,
        })
    }

    /// The binary scale `(T=1, t=0)`.
    pub fn binary() -> Self {
        OutcomeScale {
            max_level: 1,
            threshold: 0,
        }
    }

    /// Number of outcome levels, `T + 1`.
    pub fn n_levels(&self) -> usize {
        self.max_level + 1
    }

    /// True exactly for `(T=1, t=0)`.
    pub fn is_binary(&self) -> bool {
        self.max_level == 1 && self.threshold == 0
    }

    /// Levels above the threshold (the "improved" outcomes).
    pub fn above(&self) -> impl Iterator<Item = usize> {
        (self.threshold + 1)..=self.max_level
    }

    /// Levels at or below the threshold.
    pub fn at_or_below(&self) -> impl Iterator<Item = usize> {
        0..=self.threshold
    }
}
