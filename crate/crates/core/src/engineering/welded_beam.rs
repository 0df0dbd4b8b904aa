//! Welded beam design: `x = (h, l, t, b)`, minimize fabrication cost subject
//! to shear stress, bending stress, deflection, buckling and geometry limits.

use serde::{Deserialize, Serialize};

use super::{ConstrainedProblem, Constraint};
use crate::problem::Bounds;

pub const LENGTH: f64 = 14.0;
pub const YOUNG_MODULUS: f64 = 30e6;
pub const SHEAR_MODULUS: f64 = 12e6;
pub const TAU_MAX: f64 = 13_600.0;
pub const SIGMA_MAX: f64 = 30_000.0;
pub const DELTA_MAX: f64 = 0.25;
pub const COST_BUDGET: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeldedBeamObjective {
    /// `1.10471·x1²·x2 + 0.04811·x3·x4·(14 + x2)`.
    Canonical,
    /// `1.10471·x1² + 0.04811·x3·x4·(14 + x2)`, the weld term without `x2`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeldedBeamConfig {
    /// Tip load in lb.
    pub load: f64,
    pub objective: WeldedBeamObjective,
}

impl Default for WeldedBeamConfig {
    fn default() -> Self {
        Self {
            load: 600.0,
            objective: WeldedBeamObjective::Canonical,
        }
    }
}

pub fn cost(x: &[f64], form: WeldedBeamObjective) -> f64 {
    let weld = match form {
        WeldedBeamObjective::Canonical => 1.10471 * x[0] * x[0] * x[1],
        WeldedBeamObjective::Literal => 1.10471 * x[0] * x[0],
    };
    weld + 0.04811 * x[2] * x[3] * (14.0 + x[1])
}

/// Shear stress in the weld.
pub fn shear_stress(x: &[f64], load: f64) -> f64 {
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let tau_p = load / (2.0 * x1 * x2).sqrt();
    let m = load * (LENGTH + x2 / 2.0);
    let r_sq = x2 * x2 / 4.0 + ((x1 + x3) / 2.0).powi(2);
    let r = r_sq.sqrt();
    let j = 2.0 * (std::f64::consts::SQRT_2 * x1 * x2 * r_sq);
    let tau_pp = m * r / j;
    (tau_p * tau_p + 2.0 * tau_p * tau_pp * x2 / (2.0 * r) + tau_pp * tau_pp).sqrt()
}

/// Bending stress in the bar.
pub fn bending_stress(x: &[f64], load: f64) -> f64 {
    6.0 * load * LENGTH / (x[3] * x[2] * x[2])
}

/// End deflection of the bar.
pub fn deflection(x: &[f64], load: f64) -> f64 {
    6.0 * load * LENGTH.powi(3) / (YOUNG_MODULUS * x[2] * x[2] * x[3])
}

/// Critical buckling load.
pub fn buckling_load(x: &[f64]) -> f64 {
    let (x2, x3, x4) = (x[1], x[2], x[3]);
    4.013 * YOUNG_MODULUS / (LENGTH * LENGTH)
        * (x2 * x2 * x4.powi(6) / 36.0).sqrt()
        * (1.0 - x3 / (2.0 * LENGTH) * (YOUNG_MODULUS / (4.0 * SHEAR_MODULUS)).sqrt())
}

pub fn welded_beam(config: &WeldedBeamConfig) -> ConstrainedProblem {
    let bounds = Bounds::new(vec![0.1, 0.1, 0.1, 0.1], vec![2.0, 10.0, 10.0, 2.0])
        .expect("static bounds");
    let p = config.load;
    let form = config.objective;
    let constraints = vec![
        Constraint::new("g1 shear stress", move |x: &[f64]| shear_stress(x, p) - TAU_MAX),
        Constraint::new("g2 bending stress", move |x: &[f64]| bending_stress(x, p) - SIGMA_MAX),
        Constraint::new("g3 deflection", move |x: &[f64]| deflection(x, p) - DELTA_MAX),
        Constraint::new("g4 x1 <= x4", |x: &[f64]| x[0] - x[3]),
        Constraint::new("g5 buckling", move |x: &[f64]| p - buckling_load(x)),
        Constraint::new("g6 x1 >= 0.125", |x: &[f64]| 0.125 - x[0]),
        Constraint::new("g7 cost budget", move |x: &[f64]| cost(x, form) - COST_BUDGET),
    ];
    let mut cp = ConstrainedProblem::new(
        "welded_beam",
        bounds,
        move |x: &[f64]| cost(x, form),
        constraints,
    );
    if form == WeldedBeamObjective::Literal {
        cp.flags.push("literal_objective".into());
    }
    cp
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const WOA_DESIGN: [f64; 4] = [0.2057, 3.4705, 9.0366, 0.2057];

    #[test]
    fn literature_design() {
        let cp = welded_beam(&WeldedBeamConfig::default());
        assert_abs_diff_eq!(cp.objective(&WOA_DESIGN), 1.7249, epsilon = 1e-3);
        assert!(cp.constraint_values(&WOA_DESIGN).iter().all(|&g| g <= 1e-3));
    }

    #[test]
    fn thin_beam_buckles() {
        let cp = welded_beam(&WeldedBeamConfig::default());
        let g = cp.constraint_values(&[0.1; 4]);
        assert!(g[4] > 0.0);
    }

    #[test]
    fn cost_grows_with_thickness() {
        let mut x = WOA_DESIGN;
        let before = cost(&x, WeldedBeamObjective::Canonical);
        x[3] *= 2.0;
        assert!(cost(&x, WeldedBeamObjective::Canonical) > before);
    }

    #[test]
    fn literal_form_drops_length_from_weld_term() {
        let cp = welded_beam(&WeldedBeamConfig {
            objective: WeldedBeamObjective::Literal,
            ..WeldedBeamConfig::default()
        });
        let expected = 1.10471 * 0.2057f64.powi(2) + 0.04811 * 9.0366 * 0.2057 * (14.0 + 3.4705);
        assert_abs_diff_eq!(cp.objective(&WOA_DESIGN), expected, epsilon = 1e-12);
        assert!(cp.flags.contains(&"literal_objective".to_string()));
    }
}
