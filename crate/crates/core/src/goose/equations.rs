//! The individual update rules of the goose optimizer.
//!
//! Each function is one formula of the method, kept standalone so the engine
//! can be checked against hand-computed values. Vector quantities are
//! elementwise over the problem dimensions.

use crate::error::{Error, Result};
use crate::goose::params::GooseParams;
use crate::problem::Bounds;
use crate::rng::RandomSource;

/// Width added to the arrival-time interval when `dim == 1`, where
/// `[1, dim]` would otherwise collapse to a point.
pub const UNIT_DIM_TIME_WIDTH: f64 = 1e-6;

/// Random quantities drawn for one agent in one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationDraws {
    pub rnd: f64,
    pub pro: f64,
    /// Already capped at `coe_cap`.
    pub coe: f64,
    /// Stone weight in grams.
    pub s_w: f64,
    /// Arrival time of the falling object, per dimension, seconds.
    pub t_obj: Vec<f64>,
    /// Arrival time of the sound, per dimension, seconds.
    pub t_snd: Vec<f64>,
}

/// Upper end of the arrival-time interval `[1, upper]`.
pub fn arrival_time_upper(dim: usize) -> f64 {
    (dim as f64).max(1.0 + UNIT_DIM_TIME_WIDTH)
}

/// Uniform population over the box, row `i` is agent `i`.
///
/// Draws are consumed row-major: agent 0 dimension 0 first.
pub fn initialize_population(
    bounds: &Bounds,
    n_agents: usize,
    rng: &mut dyn RandomSource,
) -> Result<Vec<Vec<f64>>> {
    if n_agents == 0 {
        return Err(Error::InvalidParams("n_agents must be at least 1".into()));
    }
    Ok((0..n_agents)
        .map(|_| {
            bounds
                .lower()
                .iter()
                .zip(bounds.upper())
                .map(|(lo, hi)| rng.uniform_in(*lo, *hi))
                .collect()
        })
        .collect())
}

/// Projects `x` onto the box. NaN coordinates are replaced by the midpoint of
/// their interval.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Vec<f64> {
    x.iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(v, (lo, hi))| {
            if v.is_nan() {
                0.5 * (lo + hi)
            } else {
                v.clamp(*lo, *hi)
            }
        })
        .collect()
}

/// Draw order: `rnd`, `pro`, raw `coe`, `s_w`, then `dim` object times and
/// `dim` sound times.
pub fn draw_iteration_randoms(
    rng: &mut dyn RandomSource,
    dim: usize,
    params: &GooseParams,
) -> IterationDraws {
    let rnd = rng.uniform();
    let pro = rng.uniform();
    let coe = cap_coe(rng.uniform(), params.coe_cap);
    let s_w = rng.uniform_in(params.stone_min, params.stone_max);
    let upper = arrival_time_upper(dim);
    let t_obj = (0..dim).map(|_| rng.uniform_in(1.0, upper)).collect();
    let t_snd = (0..dim).map(|_| rng.uniform_in(1.0, upper)).collect();
    IterationDraws {
        rnd,
        pro,
        coe,
        s_w,
        t_obj,
        t_snd,
    }
}

pub fn cap_coe(raw: f64, cap: f64) -> f64 {
    if raw <= cap {
        raw
    } else {
        cap
    }
}

/// Total time `(Σ t_obj + t_snd) / dim` and its half, the average time.
pub fn total_and_average_time(t_obj: &[f64], t_snd: &[f64]) -> (f64, f64) {
    debug_assert_eq!(t_obj.len(), t_snd.len());
    let total = t_obj.iter().zip(t_snd).map(|(o, s)| o + s).sum::<f64>() / t_obj.len() as f64;
    (total, total / 2.0)
}

/// Falling speed with a heavy stone: `t_obj · √s_w · g`.
pub fn falling_speed_heavy(t_obj: &[f64], s_w: f64, gravity: f64) -> Vec<f64> {
    let k = s_w.sqrt() * gravity;
    t_obj.iter().map(|t| t * k).collect()
}

/// Falling speed with a light stone: `t_obj · s_w · g`.
pub fn falling_speed_light(t_obj: &[f64], s_w: f64, gravity: f64) -> Vec<f64> {
    let k = s_w * gravity;
    t_obj.iter().map(|t| t * k).collect()
}

pub fn sound_travel_distance(t_snd: &[f64], sound_speed: f64) -> Vec<f64> {
    t_snd.iter().map(|t| sound_speed * t).collect()
}

/// One-way distance to the guard: half the sound travel distance.
pub fn goose_distance(d_s_t: &[f64]) -> Vec<f64> {
    d_s_t.iter().map(|d| 0.5 * d).collect()
}

/// `x + f_f_s + d_g · t_a²`
pub fn exploit_heavy_update(x: &[f64], f_f_s: &[f64], d_g: &[f64], t_a: f64) -> Vec<f64> {
    let t2 = t_a * t_a;
    x.iter()
        .zip(f_f_s.iter().zip(d_g))
        .map(|(x, (f, d))| x + f + d * t2)
        .collect()
}

/// `x + f_f_s · d_g · t_a² · coe`
pub fn exploit_light_update(
    x: &[f64],
    f_f_s: &[f64],
    d_g: &[f64],
    t_a: f64,
    coe: f64,
) -> Vec<f64> {
    let t2 = t_a * t_a;
    x.iter()
        .zip(f_f_s.iter().zip(d_g))
        .map(|(x, (f, d))| x + f * d * t2 * coe)
        .collect()
}

/// Exploration scale, decaying linearly from 2 at `loop_index = 0` to 0 at
/// `loop_index = max_iters`.
pub fn alpha_schedule(loop_index: usize, max_iters: usize) -> f64 {
    2.0 - loop_index as f64 / (max_iters as f64 / 2.0)
}

/// `g · (m_t · alpha) + anchor` with `g` a fresh standard-normal vector.
pub fn explore_update(
    anchor: &[f64],
    m_t: f64,
    alpha: f64,
    rng: &mut dyn RandomSource,
    dim: usize,
) -> Vec<f64> {
    debug_assert_eq!(anchor.len(), dim);
    let scale = m_t * alpha;
    anchor
        .iter()
        .map(|a| rng.standard_normal() * scale + a)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{ScriptedSource, SeededSource};
    use approx::assert_relative_eq;

    #[test]
    fn population_rejects_degenerate_input() {
        assert!(Bounds::new(vec![0.0, 0.0], vec![0.0, 0.0]).is_err());
        let b = Bounds::uniform(2, 0.0, 1.0).unwrap();
        assert!(initialize_population(&b, 0, &mut SeededSource::new(1)).is_err());
    }

    #[test]
    fn population_covers_box_uniformly() {
        let b = Bounds::uniform(2, -1.0, 1.0).unwrap();
        let mut rng = SeededSource::new(11);
        let pop = initialize_population(&b, 1000, &mut rng).unwrap();
        assert!(pop.iter().all(|x| b.contains(x)));
        for j in 0..2 {
            let mean = pop.iter().map(|x| x[j]).sum::<f64>() / 1000.0;
            assert!(mean.abs() < 0.1, "dimension {j} mean {mean}");
        }
    }

    #[test]
    fn population_is_deterministic() {
        let b = Bounds::uniform(3, -5.0, 5.0).unwrap();
        let a = initialize_population(&b, 7, &mut SeededSource::new(3)).unwrap();
        let c = initialize_population(&b, 7, &mut SeededSource::new(3)).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn clamp_projects_and_repairs_nan() {
        let b = Bounds::uniform(2, -1.0, 1.0).unwrap();
        assert_eq!(clamp_to_bounds(&[5.0, -5.0], &b), vec![1.0, -1.0]);
        assert_eq!(clamp_to_bounds(&[0.3, -0.2], &b), vec![0.3, -0.2]);
        assert_eq!(clamp_to_bounds(&[f64::NAN, 0.0], &b), vec![0.0, 0.0]);
        let shifted = Bounds::new(vec![2.0], vec![6.0]).unwrap();
        assert_eq!(clamp_to_bounds(&[f64::NAN], &shifted), vec![4.0]);
    }

    #[test]
    fn coe_is_capped() {
        let p = GooseParams::default();
        let mut rng = ScriptedSource::new([0.6, 0.5, 0.5, 0.0, 0.0, 0.0], []);
        assert_eq!(draw_iteration_randoms(&mut rng, 1, &p).coe, 0.17);
        let mut rng = ScriptedSource::new([0.6, 0.5, 0.05, 0.0, 0.0, 0.0], []);
        assert_eq!(draw_iteration_randoms(&mut rng, 1, &p).coe, 0.05);
    }

    #[test]
    fn draws_respect_ranges() {
        let p = GooseParams::default();
        let mut rng = SeededSource::new(5);
        for _ in 0..2000 {
            let d = draw_iteration_randoms(&mut rng, 10, &p);
            assert!(d.t_obj.iter().chain(&d.t_snd).all(|t| (1.0..=10.0).contains(t)));
            assert!((5.0..=25.0).contains(&d.s_w));
            assert!(d.coe <= 0.17);
        }
        let d = draw_iteration_randoms(&mut rng, 1, &p);
        assert!(d.t_obj[0] >= 1.0 && d.t_obj[0] <= 1.0 + UNIT_DIM_TIME_WIDTH);
    }

    #[test]
    fn times() {
        assert_eq!(total_and_average_time(&[2.0, 2.0], &[4.0, 4.0]), (6.0, 3.0));
        assert_eq!(total_and_average_time(&[1.0; 7], &[1.0; 7]), (2.0, 1.0));
        assert_eq!(total_and_average_time(&[1.0], &[1.0]).0, 2.0);
    }

    #[test]
    fn falling_speeds() {
        assert_relative_eq!(falling_speed_heavy(&[1.0], 16.0, 9.81)[0], 39.24, max_relative = 1e-12);
        assert_eq!(falling_speed_heavy(&[0.0, 0.0], 16.0, 9.81), vec![0.0, 0.0]);
        let v = falling_speed_heavy(&[2.0, 3.0], 25.0, 9.81);
        assert_relative_eq!(v[0], 98.1, max_relative = 1e-12);
        assert_relative_eq!(v[1], 147.15, max_relative = 1e-12);

        assert_relative_eq!(falling_speed_light(&[1.0], 10.0, 9.81)[0], 98.1, max_relative = 1e-12);
        assert_eq!(falling_speed_light(&[0.0], 10.0, 9.81), vec![0.0]);
        assert_relative_eq!(falling_speed_light(&[2.0], 5.0, 9.81)[0], 98.1, max_relative = 1e-12);
    }

    #[test]
    fn sound_and_goose_distance() {
        assert_eq!(sound_travel_distance(&[1.0], 343.2), vec![343.2]);
        let d = sound_travel_distance(&[2.0, 0.5], 343.2);
        assert_relative_eq!(d[0], 686.4);
        assert_relative_eq!(d[1], 171.6);
        assert_eq!(sound_travel_distance(&[3.0, 4.0], 0.0), vec![0.0, 0.0]);

        assert_relative_eq!(goose_distance(&[343.2])[0], 171.6);
        assert_eq!(goose_distance(&[0.0]), vec![0.0]);
        assert_eq!(goose_distance(&[10.0, 20.0]), vec![5.0, 10.0]);
    }

    #[test]
    fn exploitation_updates() {
        assert_eq!(exploit_heavy_update(&[0.0], &[1.0], &[2.0], 1.0), vec![3.0]);
        assert_eq!(exploit_heavy_update(&[1.5, -2.0], &[0.0, 0.0], &[0.0, 0.0], 9.0), vec![1.5, -2.0]);
        assert_eq!(exploit_heavy_update(&[1.0, 1.0], &[0.0, 0.0], &[1.0, 1.0], 2.0), vec![5.0, 5.0]);

        assert_eq!(exploit_light_update(&[0.7], &[5.0], &[5.0], 3.0, 0.0), vec![0.7]);
        assert_relative_eq!(exploit_light_update(&[0.0], &[2.0], &[3.0], 1.0, 0.17)[0], 1.02);
        assert_relative_eq!(exploit_light_update(&[1.0], &[1.0], &[1.0], 2.0, 0.1)[0], 1.4);
    }

    #[test]
    fn alpha_endpoints() {
        assert_eq!(alpha_schedule(0, 500), 2.0);
        assert_eq!(alpha_schedule(250, 500), 1.0);
        assert_eq!(alpha_schedule(500, 500), 0.0);
        assert_eq!(alpha_schedule(0, 1), 2.0);
        assert_eq!(alpha_schedule(1, 1), 0.0);
        assert_eq!(alpha_schedule(7, 7), 0.0);
    }

    #[test]
    fn exploration_scale_and_replay() {
        let best = [1.0, -2.0, 3.0];
        let mut rng = SeededSource::new(4);
        assert_eq!(explore_update(&best, 5.0, 0.0, &mut rng, 3), best.to_vec());
        assert_eq!(explore_update(&best, 0.0, 1.3, &mut rng, 3), best.to_vec());

        let mut replay = SeededSource::new(77);
        let g: Vec<f64> = (0..3).map(|_| replay.standard_normal()).collect();
        let got = explore_update(&best, 1.0, 1.0, &mut SeededSource::new(77), 3);
        for j in 0..3 {
            assert_eq!(got[j], best[j] + g[j]);
        }
    }
}
