//! Multi-run experiments: seeding, parallel execution, aggregation, export
//! and comparison against published tables.
//!
//! Run `i` of every (algorithm, problem) pair uses `split_seed(master_seed, i)`,
//! so adding runs never changes earlier ones and results do not depend on the
//! worker count or completion order.

pub mod export;
pub mod reference;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::AlgorithmRegistry;
use crate::benchmarks::{ProblemRegistry, SuiteConfig, SuiteId};
use crate::error::{Error, Result};
use crate::goose::{GooseParams, RunResult, TraceLevel};
use crate::problem::Problem;
use crate::rng::split_seed;

pub use export::{
    export, export_experiment, read_summary_json, write_comparison_csv, write_convergence_csv,
    write_summary_json, ExportFormat,
};
pub use reference::{
    compare_to_reference, reference_table, reference_tables, table_for, within_band,
    ComparisonRow, ComparisonTable, ReferenceEntry, ReferenceTable, TableStatistic, TABLE_IDS,
};
pub use report::{
    aggregate, ConfigEcho, Feasibility, PairwiseTest, ProblemReport, RunRecord, StatReport,
    SCHEMA_VERSION,
};

/// Master seed used when none is given.
pub const DEFAULT_MASTER_SEED: u64 = 0;
pub const DEFAULT_RUNS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemSelection {
    Suite { suite: SuiteId, narrow_range: bool },
    Ids(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub problems: ProblemSelection,
    pub algorithms: Vec<String>,
    pub runs: usize,
    pub params: GooseParams,
    pub master_seed: u64,
    pub trace_level: TraceLevel,
    /// Parallel runs; `None` uses every available core.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(name: impl Into<String>, problems: ProblemSelection) -> Self {
        Self {
            name: name.into(),
            problems,
            algorithms: vec!["goose".into()],
            runs: DEFAULT_RUNS,
            params: GooseParams::default(),
            master_seed: DEFAULT_MASTER_SEED,
            trace_level: TraceLevel::default(),
            workers: None,
        }
    }

    pub fn suite(suite: SuiteId) -> Self {
        Self::new(
            suite.as_str(),
            ProblemSelection::Suite {
                suite,
                narrow_range: false,
            },
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::InvalidConfig(format!(
                "experiment name `{}` must be a non-empty plain file name",
                self.name
            )));
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithms selected".into()));
        }
        self.params.validate()
    }

    /// Problems of the selection from the default registry.
    pub fn resolve_problems(&self) -> Result<Vec<Problem>> {
        match &self.problems {
            ProblemSelection::Suite { suite, narrow_range } => {
                let mut cfg = SuiteConfig::new(*suite);
                cfg.narrow_range = *narrow_range;
                Ok(cfg.problems())
            }
            ProblemSelection::Ids(ids) => {
                let registry = ProblemRegistry::default();
                ids.iter().map(|id| registry.make(id)).collect()
            }
        }
    }
}

/// One finished run, tagged with its position in the experiment grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub algorithm: usize,
    pub problem: usize,
    pub run: usize,
    pub result: RunResult,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    /// Sorted by algorithm, problem, then run.
    pub outcomes: Vec<RunOutcome>,
    pub report: StatReport,
}

impl Experiment {
    pub fn problem_ids(&self) -> &[String] {
        &self.report.config.problems
    }
}

/// Resolves the configured problems and runs them.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment> {
    config.validate()?;
    let problems = config.resolve_problems()?;
    run_problems(config, &problems)
}

/// Runs every configured algorithm on `problems`; the problem selection in
/// `config` is ignored.
pub fn run_problems(config: &ExperimentConfig, problems: &[Problem]) -> Result<Experiment> {
    config.validate()?;
    if problems.is_empty() {
        return Err(Error::InvalidConfig("no problems to run".into()));
    }
    let registry = AlgorithmRegistry::default();
    let optimizers = config
        .algorithms
        .iter()
        .map(|id| registry.build(id, config.params.clone()))
        .collect::<Result<Vec<_>>>()?;

    let tasks: Vec<(usize, usize, usize)> = (0..optimizers.len())
        .flat_map(|a| (0..problems.len()).flat_map(move |p| (0..config.runs).map(move |r| (a, p, r))))
        .collect();
    let execute = || -> Vec<Result<RunOutcome>> {
        tasks
            .par_iter()
            .map(|&(a, p, run)| {
                let problem = &problems[p];
                let seed = split_seed(config.master_seed, run as u64);
                let fail = |source: Error| Error::RunFailed {
                    problem: problem.id.clone(),
                    run,
                    seed,
                    source: Box::new(source),
                };
                let result = optimizers[a].run(problem, seed, config.trace_level).map_err(fail)?;
                if !result.best_fitness.is_finite() {
                    return Err(fail(Error::InvalidConfig(format!(
                        "best fitness is {}",
                        result.best_fitness
                    ))));
                }
                Ok(RunOutcome {
                    algorithm: a,
                    problem: p,
                    run,
                    result,
                })
            })
            .collect()
    };
    let results = match config.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start {n} workers: {e}")))?
            .install(execute),
        None => execute(),
    };
    // Results come back in task order, so the first error is deterministic.
    let outcomes = results.into_iter().collect::<Result<Vec<_>>>()?;

    let echo = ConfigEcho {
        name: config.name.clone(),
        algorithms: config.algorithms.clone(),
        problems: problems.iter().map(|p| p.id.clone()).collect(),
        runs: config.runs,
        params: config.params.clone(),
        master_seed: config.master_seed,
        trace_level: config.trace_level,
    };
    let report = aggregate(echo, problems, outcomes.clone())?;
    Ok(Experiment {
        config: config.clone(),
        outcomes,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(ids: &[&str], runs: usize) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new("t", ProblemSelection::Ids(ids.iter().map(|s| s.to_string()).collect()));
        cfg.runs = runs;
        cfg.params = GooseParams::with_budget(8, 20);
        cfg.workers = Some(2);
        cfg
    }

    #[test]
    fn single_run_has_zero_std() {
        let exp = run_experiment(&small(&["F1"], 1)).unwrap();
        assert_eq!(exp.report.problems[0].summary.std, 0.0);
    }

    #[test]
    fn seeds_follow_split() {
        let exp = run_experiment(&small(&["F16"], 3)).unwrap();
        for (i, r) in exp.report.problems[0].runs.iter().enumerate() {
            assert_eq!(r.seed, split_seed(DEFAULT_MASTER_SEED, i as u64));
        }
    }

    #[test]
    fn worker_count_does_not_matter() {
        let mut cfg = small(&["F1", "F17"], 4);
        let a = run_experiment(&cfg).unwrap();
        cfg.workers = Some(1);
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn two_algorithms_get_pairwise_tests_and_ranks() {
        let mut cfg = small(&["F1", "F9"], 3);
        cfg.algorithms = vec!["goose".into(), "goose-xt".into()];
        let exp = run_experiment(&cfg).unwrap();
        assert_eq!(exp.report.problems.len(), 4);
        assert_eq!(exp.report.pairwise.len(), 2);
        assert!(exp.report.ranks.is_some());
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(run_experiment(&small(&["NOPE"], 1)).is_err());
        assert!(run_experiment(&small(&["F1"], 0)).is_err());
        let mut cfg = small(&["F1"], 1);
        cfg.algorithms = vec!["sgd".into()];
        assert!(matches!(run_experiment(&cfg), Err(Error::UnknownAlgorithm { .. })));
    }

    #[test]
    fn failing_run_names_its_seed() {
        let problem = Problem::new(
            "nan",
            crate::problem::Bounds::uniform(1, -1.0, 1.0).unwrap(),
            |_: &[f64]| f64::NAN,
        );
        let err = run_problems(&small(&["F1"], 2), &[problem]).unwrap_err();
        match err {
            Error::RunFailed { problem, run, seed, .. } => {
                assert_eq!(problem, "nan");
                assert_eq!(run, 0);
                assert_eq!(seed, split_seed(DEFAULT_MASTER_SEED, 0));
            }
            other => panic!("unexpected {other}"),
        }
    }
}
