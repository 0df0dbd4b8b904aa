//! Lossless economic load dispatch with quadratic fuel costs.
//!
//! Configuration files are TOML:
//!
//! ```toml
//! demand = 150.0
//! balance_tolerance = 1e-4   # optional, MW
//!
//! [[units]]
//! a = 0.008      # $/MW²h
//! b = 8.708      # $/MWh
//! c = 200.0      # $/h
//! p_min = 10.0   # MW
//! p_max = 85.0   # MW
//! ```
//!
//! The default three-unit data set is not published anywhere; its linear
//! coefficients were fitted so that the dispatch (45, 57.5, 47.5) MW costs
//! 608.06, 1118 and 761.89 $/h. Reported costs depend on this choice.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ConstrainedProblem, Constraint};
use crate::error::{Error, Result};
use crate::problem::Bounds;

pub const DEFAULT_BALANCE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EldUnit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub p_min: f64,
    pub p_max: f64,
}

impl EldUnit {
    pub fn cost(&self, p: f64) -> f64 {
        self.a * p * p + self.b * p + self.c
    }
}

fn default_tolerance() -> f64 {
    DEFAULT_BALANCE_TOLERANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EldConfig {
    pub demand: f64,
    #[serde(default = "default_tolerance")]
    pub balance_tolerance: f64,
    pub units: Vec<EldUnit>,
}

impl Default for EldConfig {
    fn default() -> Self {
        Self {
            demand: 150.0,
            balance_tolerance: DEFAULT_BALANCE_TOLERANCE,
            units: vec![
                EldUnit {
                    a: 0.008,
                    b: 8.708,
                    c: 200.0,
                    p_min: 10.0,
                    p_max: 85.0,
                },
                EldUnit {
                    a: 0.009,
                    b: 15.7955,
                    c: 180.0,
                    p_min: 10.0,
                    p_max: 80.0,
                },
                EldUnit {
                    a: 0.007,
                    b: 12.7599,
                    c: 140.0,
                    p_min: 10.0,
                    p_max: 70.0,
                },
            ],
        }
    }
}

impl EldConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: Self = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn n_units(&self) -> usize {
        self.units.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.units.is_empty() {
            return bad("ELD needs at least one unit".into());
        }
        if !(self.demand.is_finite() && self.demand > 0.0) {
            return bad(format!("demand must be positive, got {}", self.demand));
        }
        if !(self.balance_tolerance.is_finite() && self.balance_tolerance >= 0.0) {
            return bad(format!(
                "balance_tolerance must be non-negative, got {}",
                self.balance_tolerance
            ));
        }
        for (i, u) in self.units.iter().enumerate() {
            let finite = [u.a, u.b, u.c, u.p_min, u.p_max].iter().all(|v| v.is_finite());
            if !finite || u.p_min < 0.0 || u.p_min >= u.p_max {
                return bad(format!(
                    "unit {}: need finite coefficients and 0 <= p_min < p_max",
                    i + 1
                ));
            }
        }
        let lo: f64 = self.units.iter().map(|u| u.p_min).sum();
        let hi: f64 = self.units.iter().map(|u| u.p_max).sum();
        if self.demand < lo || self.demand > hi {
            return bad(format!(
                "demand {} MW outside the attainable range [{lo}, {hi}] MW",
                self.demand
            ));
        }
        Ok(())
    }

    pub fn total_cost(&self, p: &[f64]) -> f64 {
        self.units.iter().zip(p).map(|(u, &pi)| u.cost(pi)).sum()
    }

    pub fn unit_costs(&self, p: &[f64]) -> Vec<f64> {
        self.units.iter().zip(p).map(|(u, &pi)| u.cost(pi)).collect()
    }

    pub fn imbalance(&self, p: &[f64]) -> f64 {
        p.iter().sum::<f64>() - self.demand
    }

    pub fn within_limits(&self, p: &[f64]) -> bool {
        self.units
            .iter()
            .zip(p)
            .all(|(u, &pi)| pi >= u.p_min && pi <= u.p_max)
    }
}

pub fn economic_load_dispatch(config: &EldConfig) -> Result<ConstrainedProblem> {
    config.validate()?;
    let bounds = Bounds::new(
        config.units.iter().map(|u| u.p_min).collect(),
        config.units.iter().map(|u| u.p_max).collect(),
    )?;
    let over = config.clone();
    let under = config.clone();
    let cost = config.clone();
    let constraints = vec![
        Constraint::new("power balance (excess)", move |p: &[f64]| {
            over.imbalance(p) - over.balance_tolerance
        }),
        Constraint::new("power balance (shortfall)", move |p: &[f64]| {
            -under.imbalance(p) - under.balance_tolerance
        }),
    ];
    let mut cp = ConstrainedProblem::new(
        "eld",
        bounds,
        move |p: &[f64]| cost.total_cost(p),
        constraints,
    );
    cp.flags.push("configuration_dependent_cost".into());
    Ok(cp)
}
