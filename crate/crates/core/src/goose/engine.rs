//! Population state and the main search loop.

use crate::error::{Error, Result};
use crate::goose::equations::{
    alpha_schedule, clamp_to_bounds, draw_iteration_randoms, exploit_heavy_update,
    exploit_light_update, explore_update, falling_speed_heavy, falling_speed_light,
    goose_distance, initialize_population, sound_travel_distance, total_and_average_time,
};
use crate::goose::params::{ExplorationAnchor, GooseParams};
use crate::goose::trace::{
    Branch, BranchCounts, RunResult, RunTrace, TraceLevel, HISTORY_MAX_AGENTS, HISTORY_MAX_DIM,
};
use crate::problem::Problem;
use crate::rng::{RandomSource, SeededSource};

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    /// One row per agent.
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub best_x: Vec<f64>,
    pub best_fitness: f64,
    /// Running minimum of the total time seen in exploration moves;
    /// `+inf` until the first one.
    pub m_t: f64,
    /// Completed iterations.
    pub loop_index: usize,
    pub evaluations: u64,
}

/// Outcome of one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    /// Branch taken by each agent, in agent order.
    pub branches: Vec<Branch>,
    pub counts: BranchCounts,
}

fn sanitize(f: f64) -> f64 {
    if f.is_nan() {
        f64::INFINITY
    } else {
        f
    }
}

impl SwarmState {
    /// Samples and evaluates the initial population.
    pub fn initialize(
        problem: &Problem,
        params: &GooseParams,
        rng: &mut dyn RandomSource,
    ) -> Result<Self> {
        params.validate()?;
        let positions = initialize_population(&problem.bounds, params.n_agents, rng)?;
        let fitness: Vec<f64> = positions
            .iter()
            .map(|x| sanitize(problem.evaluate_raw(x, rng)))
            .collect();
        Ok(Self::from_population(positions, fitness))
    }

    /// Builds a state around an already evaluated population.
    pub fn from_population(positions: Vec<Vec<f64>>, fitness: Vec<f64>) -> Self {
        assert_eq!(positions.len(), fitness.len());
        assert!(!positions.is_empty());
        let mut best = 0;
        for (i, f) in fitness.iter().enumerate() {
            if *f < fitness[best] {
                best = i;
            }
        }
        Self {
            best_x: positions[best].clone(),
            best_fitness: fitness[best],
            evaluations: positions.len() as u64,
            positions,
            fitness,
            m_t: f64::INFINITY,
            loop_index: 0,
        }
    }

    pub fn mean_fitness(&self) -> f64 {
        self.fitness.iter().sum::<f64>() / self.fitness.len() as f64
    }
}

/// Moves one agent and returns the branch taken and its unclamped target.
fn propose(
    state: &mut SwarmState,
    agent: usize,
    params: &GooseParams,
    rng: &mut dyn RandomSource,
) -> (Branch, Vec<f64>) {
    let dim = state.best_x.len();
    let draws = draw_iteration_randoms(rng, dim, params);
    let (t_t, t_a) = total_and_average_time(&draws.t_obj, &draws.t_snd);
    let x = &state.positions[agent];

    if draws.rnd >= params.phase_threshold {
        let d_s_t = sound_travel_distance(&draws.t_snd, params.sound_speed);
        let d_g = goose_distance(&d_s_t);
        if draws.pro > params.pro_threshold && draws.s_w >= params.stone_threshold {
            let f_f_s = falling_speed_heavy(&draws.t_obj, draws.s_w, params.gravity);
            (Branch::Heavy, exploit_heavy_update(x, &f_f_s, &d_g, t_a))
        } else {
            let f_f_s = falling_speed_light(&draws.t_obj, draws.s_w, params.gravity);
            (
                Branch::Light,
                exploit_light_update(x, &f_f_s, &d_g, t_a, draws.coe),
            )
        }
    } else {
        state.m_t = state.m_t.min(t_t);
        let alpha = alpha_schedule(state.loop_index, params.max_iters);
        let anchor = match params.anchor {
            ExplorationAnchor::BestPosition => &state.best_x,
            ExplorationAnchor::CurrentPosition => x,
        };
        (
            Branch::Explore,
            explore_update(anchor, state.m_t, alpha, rng, dim),
        )
    }
}

/// Runs one iteration over every agent.
///
/// Per agent the random stream is consumed as: the iteration draws (see
/// [`draw_iteration_randoms`]), then `dim` normals for an exploration move,
/// then whatever the objective itself consumes.
pub fn step(
    state: &mut SwarmState,
    problem: &Problem,
    params: &GooseParams,
    rng: &mut dyn RandomSource,
) -> Result<StepReport> {
    if state.loop_index >= params.max_iters {
        return Err(Error::InvalidParams(format!(
            "iteration {} is past max_iters {}",
            state.loop_index, params.max_iters
        )));
    }
    if state.positions.len() != params.n_agents || state.best_x.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            got: state.best_x.len(),
        });
    }

    let mut branches = Vec::with_capacity(params.n_agents);
    let mut counts = BranchCounts::default();
    for agent in 0..params.n_agents {
        let (branch, target) = propose(state, agent, params, rng);
        let x = clamp_to_bounds(&target, &problem.bounds);
        let f = sanitize(problem.evaluate_raw(&x, rng));
        state.evaluations += 1;
        if f < state.best_fitness {
            state.best_fitness = f;
            state.best_x.clone_from(&x);
        }
        state.positions[agent] = x;
        state.fitness[agent] = f;
        branches.push(branch);
        counts.record(branch);
    }
    state.loop_index += 1;
    Ok(StepReport { branches, counts })
}

/// Runs the full search with a seeded generator and the default trace level.
pub fn optimize(problem: &Problem, params: &GooseParams, seed: u64) -> Result<RunResult> {
    optimize_traced(problem, params, seed, TraceLevel::default())
}

pub fn optimize_traced(
    problem: &Problem,
    params: &GooseParams,
    seed: u64,
    level: TraceLevel,
) -> Result<RunResult> {
    let mut rng = SeededSource::new(seed);
    let mut result = optimize_with_source(problem, params, &mut rng, level)?;
    result.seed = seed;
    Ok(result)
}

/// Runs the full search drawing from `rng`. The returned `seed` is 0.
pub fn optimize_with_source(
    problem: &Problem,
    params: &GooseParams,
    rng: &mut dyn RandomSource,
    level: TraceLevel,
) -> Result<RunResult> {
    let mut state = SwarmState::initialize(problem, params, rng)?;
    let keep_history = level == TraceLevel::FullHistory
        && problem.dim() <= HISTORY_MAX_DIM
        && params.n_agents <= HISTORY_MAX_AGENTS;

    let mut trace = RunTrace {
        best_fitness_per_iter: Vec::with_capacity(params.max_iters),
        mean_fitness_per_iter: level.records_mean().then(|| Vec::with_capacity(params.max_iters)),
        trajectory: (level == TraceLevel::FullHistory).then(|| Vec::with_capacity(params.max_iters)),
        search_history: keep_history.then(|| Vec::with_capacity(params.max_iters)),
    };
    let mut branch_counts = BranchCounts::default();

    for _ in 0..params.max_iters {
        let report = step(&mut state, problem, params, rng)?;
        branch_counts.add(report.counts);
        trace.best_fitness_per_iter.push(state.best_fitness);
        if let Some(mean) = trace.mean_fitness_per_iter.as_mut() {
            mean.push(state.mean_fitness());
        }
        if let Some(traj) = trace.trajectory.as_mut() {
            traj.push(state.positions[0][0]);
        }
        if let Some(history) = trace.search_history.as_mut() {
            history.push(state.positions.clone());
        }
    }

    Ok(RunResult {
        best_x: state.best_x,
        best_fitness: state.best_fitness,
        trace,
        evaluations: state.evaluations,
        seed: 0,
        branch_counts,
    })
}
