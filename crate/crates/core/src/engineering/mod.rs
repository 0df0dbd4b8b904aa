//! Constrained design problems and their static-penalty form.
//!
//! Constraints follow the `g(x) <= 0` convention. [`penalize`] folds them into
//! `f(x) + c · Σ max(0, g_i(x))²`, which leaves feasible points untouched.

pub mod eld;
pub mod igg;
pub mod pressure_vessel;
pub mod welded_beam;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};

pub use eld::{economic_load_dispatch, EldConfig, EldUnit};
pub use igg::{igg_fraction, igg_p, IggConfig};
pub use pressure_vessel::{pressure_vessel, snap_thicknesses, SnapOutcome};
pub use welded_beam::{welded_beam, WeldedBeamConfig, WeldedBeamObjective};

pub const DEFAULT_PENALTY: f64 = 1e6;

/// A point is feasible when every `g_i <= FEASIBILITY_TOLERANCE`.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct Constraint {
    pub name: String,
    pub g: ScalarFn,
}

impl Constraint {
    pub fn new(name: impl Into<String>, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            g: Arc::new(g),
        }
    }
}

#[derive(Clone)]
pub struct ConstrainedProblem {
    pub id: String,
    pub bounds: Bounds,
    pub raw_objective: ScalarFn,
    pub constraints: Vec<Constraint>,
    pub penalty_coefficient: f64,
    pub flags: Vec<String>,
}

impl fmt::Debug for ConstrainedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.constraints.iter().map(|c| c.name.as_str()).collect();
        f.debug_struct("ConstrainedProblem")
            .field("id", &self.id)
            .field("dim", &self.bounds.dim())
            .field("constraints", &names)
            .field("penalty_coefficient", &self.penalty_coefficient)
            .finish_non_exhaustive()
    }
}

impl ConstrainedProblem {
    pub fn new(
        id: impl Into<String>,
        bounds: Bounds,
        raw_objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        constraints: Vec<Constraint>,
    ) -> Self {
        Self {
            id: id.into(),
            bounds,
            raw_objective: Arc::new(raw_objective),
            constraints,
            penalty_coefficient: DEFAULT_PENALTY,
            flags: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.raw_objective)(x)
    }

    pub fn constraint_values(&self, x: &[f64]) -> Vec<f64> {
        self.constraints.iter().map(|c| (c.g)(x)).collect()
    }

    /// `max_i g_i(x)`; zero for an unconstrained problem.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        max_g(&self.constraints, x)
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.max_violation(x) <= FEASIBILITY_TOLERANCE
    }

    pub fn penalized(&self, x: &[f64]) -> f64 {
        penalized_value(&*self.raw_objective, &self.constraints, self.penalty_coefficient, x)
    }
}

fn max_g(constraints: &[Constraint], x: &[f64]) -> f64 {
    if constraints.is_empty() {
        return 0.0;
    }
    constraints
        .iter()
        .map(|c| (c.g)(x))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn penalized_value(
    raw: &(dyn Fn(&[f64]) -> f64 + Send + Sync),
    constraints: &[Constraint],
    coefficient: f64,
    x: &[f64],
) -> f64 {
    let violation: f64 = constraints
        .iter()
        .map(|c| (c.g)(x).max(0.0).powi(2))
        .sum();
    let value = raw(x);
    // A zero coefficient must not turn an infinite violation into NaN.
    if violation == 0.0 || coefficient == 0.0 {
        value
    } else {
        value + coefficient * violation
    }
}

/// Static quadratic-penalty form of `cp` as an unconstrained problem.
pub fn penalize(cp: &ConstrainedProblem) -> Problem {
    let raw = cp.raw_objective.clone();
    let constraints = cp.constraints.clone();
    let coefficient = cp.penalty_coefficient;
    let mut problem = Problem::new(cp.id.clone(), cp.bounds.clone(), move |x: &[f64]| {
        penalized_value(&*raw, &constraints, coefficient, x)
    });
    let constraints = cp.constraints.clone();
    problem.max_violation = Some(Arc::new(move |x: &[f64]| max_g(&constraints, x)));
    problem.flags = cp.flags.clone();
    problem
}

/// The four engineering case studies with their run presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineeringId {
    WeldedBeam,
    PressureVessel,
    Eld,
    Igg,
}

/// Swarm size, iteration budget and run count for one case study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preset {
    pub n_agents: usize,
    pub max_iters: usize,
    pub runs: usize,
}

impl EngineeringId {
    pub const ALL: [EngineeringId; 4] = [Self::WeldedBeam, Self::PressureVessel, Self::Eld, Self::Igg];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::WeldedBeam => "welded_beam",
            Self::PressureVessel => "pressure_vessel",
            Self::Eld => "eld",
            Self::Igg => "igg",
        }
    }

    /// Budgets of the published case studies; unstated values fall back to
    /// 30 agents, 500 iterations and 30 runs.
    pub fn preset(self) -> Preset {
        match self {
            Self::WeldedBeam => Preset {
                n_agents: 20,
                max_iters: 500,
                runs: 30,
            },
            Self::PressureVessel => Preset {
                n_agents: 30,
                max_iters: 500,
                runs: 30,
            },
            Self::Eld => Preset {
                n_agents: 30,
                max_iters: 1000,
                runs: 50,
            },
            Self::Igg => Preset {
                n_agents: 12,
                max_iters: 150,
                runs: 30,
            },
        }
    }

    /// Builds the problem with default configuration.
    pub fn build(self) -> ConstrainedProblem {
        match self {
            Self::WeldedBeam => welded_beam(&WeldedBeamConfig::default()),
            Self::PressureVessel => pressure_vessel(),
            Self::Eld => economic_load_dispatch(&EldConfig::default()).expect("default ELD config"),
            Self::Igg => igg_fraction(&IggConfig::default()).expect("default IgG config"),
        }
    }
}

impl fmt::Display for EngineeringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineeringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownProblem {
                id: s.to_string(),
                valid: Self::ALL.iter().map(|id| id.as_str().to_string()).collect(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ConstrainedProblem {
        let bounds = Bounds::uniform(1, 0.0, 10.0).unwrap();
        ConstrainedProblem::new(
            "toy",
            bounds,
            |x: &[f64]| (x[0] - 2.0).powi(2),
            vec![Constraint::new("x >= 5", |x: &[f64]| 5.0 - x[0])],
        )
    }

    #[test]
    fn feasible_points_are_not_penalized() {
        let cp = toy();
        let p = penalize(&cp);
        assert_eq!(p.evaluate(&[6.0], None).unwrap(), 16.0);
        assert_eq!(p.violation(&[6.0]), Some(-1.0));
    }

    #[test]
    fn violation_adds_scaled_square() {
        let cp = toy();
        let v: f64 = 0.5;
        let x = [5.0 - v];
        let expected = (x[0] - 2.0).powi(2) + DEFAULT_PENALTY * v * v;
        assert_eq!(penalize(&cp).evaluate(&x, None).unwrap(), expected);
        assert!(!cp.is_feasible(&x));
    }

    #[test]
    fn zero_coefficient_is_unconstrained() {
        let mut cp = toy();
        cp.penalty_coefficient = 0.0;
        assert_eq!(penalize(&cp).evaluate(&[2.0], None).unwrap(), 0.0);
    }

    #[test]
    fn ids_round_trip() {
        for id in EngineeringId::ALL {
            assert_eq!(id.as_str().parse::<EngineeringId>().unwrap(), id);
            assert_eq!(id.build().id, id.as_str());
        }
        assert!("truss".parse::<EngineeringId>().is_err());
        assert_eq!(EngineeringId::Igg.preset().n_agents, 12);
        assert_eq!(EngineeringId::Eld.preset().runs, 50);
    }
}
