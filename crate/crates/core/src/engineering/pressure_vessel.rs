//! Pressure vessel design: `x = (Ts, Th, R, L)`, minimize material, forming
//! and welding cost of a cylindrical vessel with hemispherical heads.
//!
//! Shell and head thicknesses are searched continuously; [`snap_thicknesses`]
//! rounds them up to the 0.0625 in plate gauge and re-checks feasibility.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ConstrainedProblem, Constraint};
use crate::problem::Bounds;

pub const PLATE_GAUGE: f64 = 0.0625;

pub fn cost(x: &[f64]) -> f64 {
    let (ts, th, r, l) = (x[0], x[1], x[2], x[3]);
    0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r
}

pub fn pressure_vessel() -> ConstrainedProblem {
    let bounds = Bounds::new(
        vec![PLATE_GAUGE, PLATE_GAUGE, 10.0, 10.0],
        vec![99.0 * PLATE_GAUGE, 99.0 * PLATE_GAUGE, 200.0, 200.0],
    )
    .expect("static bounds");
    let constraints = vec![
        Constraint::new("g1 shell thickness", |x: &[f64]| -x[0] + 0.0193 * x[2]),
        Constraint::new("g2 head thickness", |x: &[f64]| -x[1] + 0.0095 * x[2]),
        Constraint::new("g3 volume", |x: &[f64]| {
            -PI * x[2] * x[2] * x[3] - 4.0 / 3.0 * PI * x[2].powi(3) + 1_296_000.0
        }),
        Constraint::new("g4 length", |x: &[f64]| x[3] - 240.0),
    ];
    ConstrainedProblem::new("pressure_vessel", bounds, cost, constraints)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapOutcome {
    pub design: Vec<f64>,
    pub objective: f64,
    pub max_violation: f64,
    pub feasible: bool,
}

/// Rounds `Ts` and `Th` up to multiples of [`PLATE_GAUGE`] (capped at the
/// upper bound) and evaluates the snapped design.
pub fn snap_thicknesses(cp: &ConstrainedProblem, x: &[f64]) -> SnapOutcome {
    let mut design = x.to_vec();
    for (i, v) in design.iter_mut().enumerate().take(2) {
        let steps = (*v / PLATE_GAUGE - 1e-9).ceil().max(1.0);
        let max_steps = (cp.bounds.upper()[i] / PLATE_GAUGE).floor();
        *v = steps.min(max_steps) * PLATE_GAUGE;
    }
    let max_violation = cp.max_violation(&design);
    SnapOutcome {
        objective: cp.objective(&design),
        feasible: max_violation <= super::FEASIBILITY_TOLERANCE,
        max_violation,
        design,
    }
}
