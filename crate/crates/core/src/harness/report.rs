//! Aggregated experiment statistics.

use serde::{Deserialize, Serialize};

use super::RunOutcome;
use crate::engineering::FEASIBILITY_TOLERANCE;
use crate::error::{Error, Result};
use crate::goose::{GooseParams, TraceLevel};
use crate::problem::Problem;
use crate::stats::{rank_table, summarize, wilcoxon_rank_sum, ProblemMeans, RankTable, Summary, WilcoxonResult};

/// Bumped whenever a field of the exported report changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// Everything in the configuration that affects results (worker count is
/// deliberately absent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub name: String,
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    pub runs: usize,
    pub params: GooseParams,
    pub master_seed: u64,
    pub trace_level: TraceLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub evaluations: u64,
    /// `max_i g_i` at the best point; present for constrained problems.
    pub max_violation: Option<f64>,
    pub best_x: Vec<f64>,
}

impl RunRecord {
    pub fn feasible(&self) -> Option<bool> {
        self.max_violation.map(|v| v <= FEASIBILITY_TOLERANCE)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub runs: usize,
    pub feasible_runs: usize,
    pub worst_violation: f64,
    /// Lowest best fitness among feasible runs.
    pub best_feasible: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemReport {
    pub algorithm_id: String,
    pub problem_id: String,
    pub dim: usize,
    pub known_optimum: Option<f64>,
    pub flags: Vec<String>,
    pub summary: Summary,
    pub feasibility: Option<Feasibility>,
    pub runs: Vec<RunRecord>,
}

impl ProblemReport {
    pub fn values(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.best_fitness).collect()
    }

    /// The run with the lowest best fitness (earliest on ties).
    pub fn best_run(&self) -> &RunRecord {
        self.runs
            .iter()
            .reduce(|a, b| if b.best_fitness < a.best_fitness { b } else { a })
            .expect("at least one run")
    }

    /// Whether the best run satisfies all constraints; unconstrained problems
    /// count as feasible.
    pub fn best_run_feasible(&self) -> bool {
        self.best_run().feasible().unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub problem_id: String,
    pub algorithm_a: String,
    pub algorithm_b: String,
    pub result: WilcoxonResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    /// Algorithm-major, problems in configuration order.
    pub problems: Vec<ProblemReport>,
    pub pairwise: Vec<PairwiseTest>,
    /// Present when more than one algorithm ran.
    pub ranks: Option<RankTable>,
}

impl StatReport {
    pub fn problem(&self, algorithm_id: &str, problem_id: &str) -> Option<&ProblemReport> {
        self.problems
            .iter()
            .find(|p| p.algorithm_id == algorithm_id && p.problem_id == problem_id)
    }
}

/// Builds the report from run outcomes in any order.
pub fn aggregate(echo: ConfigEcho, problems: &[Problem], mut outcomes: Vec<RunOutcome>) -> Result<StatReport> {
    outcomes.sort_by_key(|o| (o.algorithm, o.problem, o.run));
    let mut reports = Vec::new();
    for (a, algorithm_id) in echo.algorithms.iter().enumerate() {
        for (p, problem) in problems.iter().enumerate() {
            let runs: Vec<RunRecord> = outcomes
                .iter()
                .filter(|o| o.algorithm == a && o.problem == p)
                .map(|o| RunRecord {
                    run: o.run,
                    seed: o.result.seed,
                    best_fitness: o.result.best_fitness,
                    evaluations: o.result.evaluations,
                    max_violation: problem.violation(&o.result.best_x),
                    best_x: o.result.best_x.clone(),
                })
                .collect();
            if runs.is_empty() {
                return Err(Error::EmptySample(format!("{algorithm_id}/{}", problem.id)));
            }
            let values: Vec<f64> = runs.iter().map(|r| r.best_fitness).collect();
            let feasibility = problem.max_violation.as_ref().map(|_| {
                let feasible: Vec<&RunRecord> = runs.iter().filter(|r| r.feasible() == Some(true)).collect();
                Feasibility {
                    runs: runs.len(),
                    feasible_runs: feasible.len(),
                    worst_violation: runs
                        .iter()
                        .filter_map(|r| r.max_violation)
                        .fold(f64::NEG_INFINITY, f64::max),
                    best_feasible: feasible.iter().map(|r| r.best_fitness).reduce(f64::min),
                }
            });
            reports.push(ProblemReport {
                algorithm_id: algorithm_id.clone(),
                problem_id: problem.id.clone(),
                dim: problem.dim(),
                known_optimum: problem.known_optimum,
                flags: problem.flags.clone(),
                summary: summarize(&values)?,
                feasibility,
                runs,
            });
        }
    }

    let mut pairwise = Vec::new();
    for (i, a) in echo.algorithms.iter().enumerate() {
        for b in &echo.algorithms[i + 1..] {
            for problem in problems {
                let find = |alg: &str| {
                    reports
                        .iter()
                        .find(|r| r.algorithm_id == alg && r.problem_id == problem.id)
                        .map(ProblemReport::values)
                        .expect("report for every pair")
                };
                pairwise.push(PairwiseTest {
                    problem_id: problem.id.clone(),
                    algorithm_a: a.clone(),
                    algorithm_b: b.clone(),
                    result: wilcoxon_rank_sum(&find(a), &find(b))?,
                });
            }
        }
    }

    let ranks = if echo.algorithms.len() > 1 {
        let rows: Vec<ProblemMeans> = problems
            .iter()
            .map(|problem| ProblemMeans {
                problem_id: problem.id.clone(),
                means: reports
                    .iter()
                    .filter(|r| r.problem_id == problem.id)
                    .map(|r| (r.algorithm_id.clone(), r.summary.mean))
                    .collect(),
            })
            .collect();
        Some(rank_table(&rows)?)
    } else {
        None
    };

    Ok(StatReport {
        schema_version: SCHEMA_VERSION,
        config: echo,
        problems: reports,
        pairwise,
        ranks,
    })
}
