use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point that exploration moves scatter around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ExplorationAnchor {
    /// Best position found so far.
    #[default]
    BestPosition,
    /// The agent's own current position.
    CurrentPosition,
}

/// Tunable constants of the goose optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GooseParams {
    pub n_agents: usize,
    pub max_iters: usize,
    /// Upper cap applied to the `coe` draw.
    pub coe_cap: f64,
    /// `rnd >= phase_threshold` selects exploitation.
    pub phase_threshold: f64,
    /// `pro > pro_threshold` (with a heavy stone) selects the heavy update.
    pub pro_threshold: f64,
    /// Stone weight in grams at or above which the heavy update applies.
    pub stone_threshold: f64,
    pub stone_min: f64,
    pub stone_max: f64,
    /// Gravitational acceleration, m/s².
    pub gravity: f64,
    /// Speed of sound, m/s.
    pub sound_speed: f64,
    pub anchor: ExplorationAnchor,
}

impl Default for GooseParams {
    fn default() -> Self {
        Self {
            n_agents: 30,
            max_iters: 500,
            coe_cap: 0.17,
            phase_threshold: 0.5,
            pro_threshold: 0.2,
            stone_threshold: 12.0,
            stone_min: 5.0,
            stone_max: 25.0,
            gravity: 9.81,
            sound_speed: 343.2,
            anchor: ExplorationAnchor::BestPosition,
        }
    }
}

impl GooseParams {
    pub fn with_budget(n_agents: usize, max_iters: usize) -> Self {
        Self {
            n_agents,
            max_iters,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_agents == 0 {
            return fail("n_agents must be at least 1".into());
        }
        if self.max_iters == 0 {
            return fail("max_iters must be at least 1".into());
        }
        if !(self.coe_cap > 0.0 && self.coe_cap <= 1.0) {
            return fail(format!("coe_cap {} outside (0, 1]", self.coe_cap));
        }
        if !(0.0..=1.0).contains(&self.phase_threshold) {
            return fail(format!("phase_threshold {} outside [0, 1]", self.phase_threshold));
        }
        if !(0.0..=1.0).contains(&self.pro_threshold) {
            return fail(format!("pro_threshold {} outside [0, 1]", self.pro_threshold));
        }
        if !(self.stone_min > 0.0
            && self.stone_min < self.stone_threshold
            && self.stone_threshold < self.stone_max)
        {
            return fail(format!(
                "stone weights must satisfy 0 < min ({}) < threshold ({}) < max ({})",
                self.stone_min, self.stone_threshold, self.stone_max
            ));
        }
        if !(self.gravity.is_finite() && self.sound_speed.is_finite()) {
            return fail("physical constants must be finite".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_configuration() {
        let p = GooseParams::default();
        assert_eq!((p.n_agents, p.max_iters), (30, 500));
        assert_eq!(p.coe_cap, 0.17);
        assert_eq!(p.sound_speed, 343.2);
        assert_eq!(p.gravity, 9.81);
        p.validate().unwrap();
    }

    #[test]
    fn validation_rejects_bad_values() {
        for bad in [
            GooseParams { n_agents: 0, ..Default::default() },
            GooseParams { max_iters: 0, ..Default::default() },
            GooseParams { coe_cap: 0.0, ..Default::default() },
            GooseParams { coe_cap: 1.5, ..Default::default() },
            GooseParams { phase_threshold: 1.2, ..Default::default() },
            GooseParams { stone_threshold: 30.0, ..Default::default() },
            GooseParams { stone_min: 12.0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }
}
