use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accuracy and truncation policy shared by every numerical operation.
///
/// * `target_rel_error` - relative accuracy goal for sums and quadratures.
/// * `series_truncation` - number of explicit terms in direct superzeta sums
///   before the tail correction takes over.
/// * `quadrature_nodes` - node density of the finest double-exponential level
///   (nodes per unit of the transformed variable); the refinement stops at
///   step `1 / quadrature_nodes`.
/// * `derivative_step` - initial step of the Richardson-extrapolated central
///   differences used for s-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalContext {
    pub target_rel_error: f64,
    pub series_truncation: usize,
    pub quadrature_nodes: usize,
    pub derivative_step: f64,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext {
            target_rel_error: 1e-10,
            series_truncation: 10_000,
            quadrature_nodes: 128,
            derivative_step: 0.1,
        }
    }
}

impl EvalContext {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0) || !self.target_rel_error.is_finite() {
            return Err(Error::invalid("target_rel_error must be positive"));
        }
        if self.series_truncation < 1 {
            return Err(Error::invalid("series_truncation must be at least 1"));
        }
        if self.quadrature_nodes < 8 {
            return Err(Error::invalid("quadrature_nodes must be at least 8"));
        }
        if !(self.derivative_step > 0.0) || !self.derivative_step.is_finite() {
            return Err(Error::invalid("derivative_step must be positive"));
        }
        Ok(())
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_rel_error = target;
        self
    }

    pub fn with_truncation(mut self, terms: usize) -> Self {
        self.series_truncation = terms;
        self
    }
}
