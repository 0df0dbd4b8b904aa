//! Pathological IgG fraction in cerebrospinal fluid.
//!
//! The regression target `Y(X) = Σ (0.41 + 0.0014·X_i)` is affine, so it is
//! minimized in absolute value over a configurable box. Dimension, bounds and
//! the absolute-value reading are assumptions and are flagged in reports.

use serde::{Deserialize, Serialize};

use super::ConstrainedProblem;
use crate::error::{Error, Result};
use crate::problem::Bounds;

pub const INTERCEPT: f64 = 0.41;
pub const SLOPE: f64 = 0.0014;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IggConfig {
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
    /// Minimize `|Y|` rather than `Y`.
    pub absolute: bool,
}

impl Default for IggConfig {
    fn default() -> Self {
        Self {
            dim: 1,
            lower: -400.0,
            upper: 400.0,
            absolute: true,
        }
    }
}

/// Locally synthesized IgG in CSF.
pub fn igg_p(igg_csf: f64, alb_serum: f64, alb_csf: f64, igg_serum: f64) -> f64 {
    igg_csf - (0.43 * alb_serum - alb_csf + 0.001) * igg_serum
}

pub fn regression_sum(x: &[f64]) -> f64 {
    x.iter().map(|v| INTERCEPT + SLOPE * v).sum()
}

pub fn igg_fraction(config: &IggConfig) -> Result<ConstrainedProblem> {
    if config.dim == 0 {
        return Err(Error::InvalidConfig("IgG dimension must be at least 1".into()));
    }
    let bounds = Bounds::uniform(config.dim, config.lower, config.upper)?;
    let absolute = config.absolute;
    let mut cp = ConstrainedProblem::new(
        "igg",
        bounds,
        move |x: &[f64]| {
            let y = regression_sum(x);
            if absolute {
                y.abs()
            } else {
                y
            }
        },
        Vec::new(),
    );
    cp.flags.push("assumed_formulation".into());
    Ok(cp)
}
