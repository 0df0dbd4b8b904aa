//! Command-line front end for the goose optimizer.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use goose::benchmarks::{Cec2019Data, ProblemRegistry, SuiteConfig, SuiteId};
use goose::engineering::{
    economic_load_dispatch, igg_fraction, penalize, pressure_vessel, snap_thicknesses, welded_beam,
    EldConfig, EngineeringId, IggConfig, WeldedBeamConfig,
};
use goose::goose::{GooseParams, TraceLevel};
use goose::harness::{
    compare_to_reference, export_experiment, read_summary_json, run_problems, table_for,
    ComparisonTable, Experiment, ExperimentConfig, ProblemSelection, StatReport,
    DEFAULT_MASTER_SEED,
};
use goose::{selftest, Error, Problem};

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "GOOSE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "goose", version, about = "Goose-guarding swarm optimizer: benchmarks, engineering problems and reproducible experiments")]
pub struct Cli {
    /// Parallel runs (default: number of available processors)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every registered problem with its dimension, range and minimum
    List,
    /// Run one problem for several seeded runs and export the results
    Run(RunArgs),
    /// Run a full benchmark suite and compare with the published table
    Suite(SuiteArgs),
    /// Run an engineering design problem under its published budget
    Engineer(EngineerArgs),
    /// Compare a saved summary against a published table
    Compare(CompareArgs),
    /// Run the built-in acceptance checks
    Selftest,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Master seed; run i uses a seed derived from it
    #[arg(long, default_value_t = DEFAULT_MASTER_SEED)]
    pub seed: u64,
    /// Output root directory
    #[arg(long, env = OUT_DIR_ENV, default_value = "results")]
    pub out: PathBuf,
    /// Per-iteration detail: best_only, best_and_mean or full_history
    #[arg(long, default_value = "best_and_mean", value_parser = parse_trace)]
    pub trace: TraceLevel,
    /// Optimizer variant (goose or goose-xt)
    #[arg(long, default_value = "goose")]
    pub algorithm: String,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Problem id, e.g. F18, CEC04 or welded_beam
    #[arg(long)]
    pub problem: String,
    /// Search agents
    #[arg(long, default_value_t = 30)]
    pub agents: usize,
    /// Iterations per run
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    /// Independent runs
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    /// Directory with CEC 2019 shift and rotation files
    #[arg(long)]
    pub cec_data: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// classical19, five_classical30 or cec2019
    #[arg(long)]
    pub suite: String,
    /// Search the five-function suite over [-5.12, 5.12]
    #[arg(long)]
    pub narrow_range: bool,
    /// Directory with CEC 2019 shift and rotation files
    #[arg(long)]
    pub cec_data: Option<PathBuf>,
    /// Independent runs
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EngineerArgs {
    /// welded_beam, pressure_vessel, eld or igg
    #[arg(long)]
    pub problem: String,
    /// TOML configuration for the problem (eld, welded_beam or igg)
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// summary.json written by run, suite or engineer
    #[arg(long)]
    pub report: PathBuf,
    /// T2, T3, T4, T15, T17 or T18
    #[arg(long)]
    pub table: String,
}

fn parse_trace(s: &str) -> std::result::Result<TraceLevel, String> {
    s.parse()
}

/// Parses arguments from the process and runs the command.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

pub fn execute(cli: &Cli) -> Result<ExitCode> {
    let workers = cli.workers.map(|w| w as usize);
    match &cli.command {
        Command::List => {
            print!("{}", list_text(&ProblemRegistry::default()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Run(args) => cmd_run(args, workers),
        Command::Suite(args) => cmd_suite(args, workers),
        Command::Engineer(args) => cmd_engineer(args, workers),
        Command::Compare(args) => {
            let report = read_summary_json(&args.report)?;
            print!("{}", render_comparison(&compare_to_reference(&report, &args.table)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let mut all = true;
            for criterion in &selftest::CRITERIA {
                let (outcome, line) = criterion.run();
                println!("{line}");
                all &= outcome.passed;
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

/// At most six decimals, without trailing zeros.
fn fmt_num(v: f64) -> String {
    format!("{}", (v * 1e6).round() / 1e6)
}

/// One line per problem, sorted by id.
pub fn list_text(registry: &ProblemRegistry) -> String {
    let mut out = String::new();
    for id in registry.ids() {
        let p = registry.make(&id).expect("listed id");
        let (lo, hi) = (p.bounds.lower(), p.bounds.upper());
        let range = if lo.iter().all(|v| *v == lo[0]) && hi.iter().all(|v| *v == hi[0]) {
            format!("[{}, {}]", fmt_num(lo[0]), fmt_num(hi[0]))
        } else {
            "per-dimension".to_string()
        };
        let fmin = p.known_optimum.map_or("unknown".to_string(), fmt_num);
        out.push_str(&format!("{id:<6} dim {:<3} range {range:<18} fmin {fmin}\n", p.dim()));
    }
    out
}

fn load_cec(dir: Option<&Path>) -> Result<Option<Arc<Cec2019Data>>> {
    dir.map(|d| Cec2019Data::load(d).map(Arc::new).with_context(|| format!("loading CEC data from {}", d.display())))
        .transpose()
}

fn base_config(name: String, ids: Vec<String>, output: &OutputArgs, workers: Option<usize>) -> ExperimentConfig {
    let mut config = ExperimentConfig::new(name, ProblemSelection::Ids(ids));
    config.master_seed = output.seed;
    config.trace_level = output.trace;
    config.algorithms = vec![output.algorithm.clone()];
    config.workers = workers;
    config
}

/// Benchmark ids come from the registry; engineering ids use default
/// configurations.
fn resolve(id: &str, registry: &ProblemRegistry) -> Result<Problem> {
    match registry.make(id) {
        Ok(p) => Ok(p),
        Err(_) => match id.parse::<EngineeringId>() {
            Ok(e) => Ok(penalize(&e.build())),
            Err(_) => {
                let mut valid = registry.ids();
                valid.extend(EngineeringId::ALL.iter().map(|e| e.as_str().to_string()));
                Err(Error::UnknownProblem { id: id.to_string(), valid }.into())
            }
        },
    }
}

fn summary_lines(report: &StatReport) -> String {
    let mut out = String::new();
    for p in &report.problems {
        let s = &p.summary;
        out.push_str(&format!(
            "{:<16} mean {:.6e}  std {:.6e}  best {:.6e}  ({} runs)",
            p.problem_id, s.mean, s.std, s.min, s.n
        ));
        if let Some(f) = &p.feasibility {
            out.push_str(&format!(
                "  feasible {}/{}  worst max g {:.3e}",
                f.feasible_runs, f.runs, f.worst_violation
            ));
        }
        out.push('\n');
    }
    out
}

fn finish(experiment: &Experiment, out: &Path, table: Option<&str>) -> Result<ExitCode> {
    let comparison = match table {
        Some(t) => Some(compare_to_reference(&experiment.report, t)?),
        None => None,
    };
    let dir = export_experiment(experiment, out, comparison.as_ref())?;
    print!("{}", summary_lines(&experiment.report));
    if let Some(c) = &comparison {
        print!("{}", render_comparison(c));
    }
    println!("wrote {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: &RunArgs, workers: Option<usize>) -> Result<ExitCode> {
    let registry = ProblemRegistry::with_cec_data(load_cec(args.cec_data.as_deref())?);
    let problem = resolve(&args.problem, &registry)?;
    let mut config = base_config(
        format!("{}_seed{}", args.problem, args.output.seed),
        vec![args.problem.clone()],
        &args.output,
        workers,
    );
    config.runs = args.runs;
    config.params = GooseParams::with_budget(args.agents, args.iters);
    let experiment = run_problems(&config, &[problem])?;
    finish(&experiment, &args.output.out, None)
}

fn cmd_suite(args: &SuiteArgs, workers: Option<usize>) -> Result<ExitCode> {
    let suite: SuiteId = args.suite.parse()?;
    let mut suite_config = SuiteConfig::new(suite);
    suite_config.narrow_range = args.narrow_range;
    suite_config.cec_data = load_cec(args.cec_data.as_deref())?;
    let problems = suite_config.problems();
    let name = if args.narrow_range {
        format!("{suite}_narrow_seed{}", args.output.seed)
    } else {
        format!("{suite}_seed{}", args.output.seed)
    };
    let mut config = base_config(name, problems.iter().map(|p| p.id.clone()).collect(), &args.output, workers);
    config.problems = ProblemSelection::Suite {
        suite,
        narrow_range: args.narrow_range,
    };
    config.runs = args.runs;
    let experiment = run_problems(&config, &problems)?;
    finish(&experiment, &args.output.out, table_for(suite.as_str()))
}

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_engineer(args: &EngineerArgs, workers: Option<usize>) -> Result<ExitCode> {
    let id: EngineeringId = args.problem.parse()?;
    let cp = match (id, &args.config) {
        (EngineeringId::Eld, Some(path)) => economic_load_dispatch(&EldConfig::load(path)?)?,
        (EngineeringId::WeldedBeam, Some(path)) => welded_beam(&read_toml::<WeldedBeamConfig>(path)?),
        (EngineeringId::Igg, Some(path)) => igg_fraction(&read_toml::<IggConfig>(path)?)?,
        (EngineeringId::PressureVessel, Some(_)) => bail!("pressure_vessel takes no configuration file"),
        (_, None) => id.build(),
    };
    let preset = id.preset();
    println!(
        "{id}: {} agents, {} iterations, {} runs, seed {}",
        preset.n_agents, preset.max_iters, preset.runs, args.output.seed
    );
    let mut config = base_config(
        format!("{id}_seed{}", args.output.seed),
        vec![id.as_str().to_string()],
        &args.output,
        workers,
    );
    config.runs = preset.runs;
    config.params = GooseParams::with_budget(preset.n_agents, preset.max_iters);
    let experiment = run_problems(&config, &[penalize(&cp)])?;
    let best = experiment.report.problems[0].best_run();
    println!("best design {:?}", best.best_x);
    if id == EngineeringId::PressureVessel {
        let snapped = snap_thicknesses(&pressure_vessel(), &best.best_x);
        println!(
            "snapped to plate gauge {:?}: cost {:.4}, max g {:.3e}, {}",
            snapped.design,
            snapped.objective,
            snapped.max_violation,
            if snapped.feasible { "feasible" } else { "infeasible" }
        );
    }
    finish(&experiment, &args.output.out, table_for(id.as_str()))
}

fn opt(v: Option<f64>) -> String {
    v.map_or("NA".to_string(), |v| format!("{v:.6e}"))
}

pub fn render_comparison(table: &ComparisonTable) -> String {
    let mut out = format!(
        "table {} ({:?}), fresh {} vs printed GOOSE and {}\n",
        table.table_id,
        table.statistic,
        table.algorithm_id,
        table.competitors.join(", ")
    );
    for row in &table.rows {
        let band = match row.within_band {
            Some(true) => "within band",
            Some(false) => "outside band",
            None => "no band",
        };
        out.push_str(&format!(
            "{:<16} fresh {:.6e} ± {:.3e}  paper {} ± {}  rank {}/{}  {band}\n",
            row.problem_id,
            row.fresh_mean,
            row.fresh_std,
            opt(row.paper_mean),
            opt(row.paper_std),
            row.rank,
            row.ranked_against + 1,
        ));
    }
    out
}
