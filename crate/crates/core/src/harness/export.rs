//! Files written for an experiment.
//!
//! Layout under the output root:
//!
//! ```text
//! <out>/<name>/summary.json      StatReport, schema_version first
//! <out>/<name>/convergence.csv   one row per (problem, run, iteration)
//! <out>/<name>/comparison.csv    only when a reference table applies
//! <out>/<name>/traces/           per-run traces at full_history level
//! ```
//!
//! Iterations in the convergence file count from 1. The `mean_fitness`
//! column is left out at `best_only`, and an `algorithm` column is prepended
//! when more than one algorithm ran.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::reference::ComparisonTable;
use super::report::StatReport;
use super::Experiment;
use crate::error::{Error, Result};
use crate::goose::TraceLevel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    /// Convergence curves.
    Csv,
    /// The summary report.
    Json,
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Parse {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

/// Writes one export of `experiment` to `path`.
pub fn export(experiment: &Experiment, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => write_convergence_csv(experiment, path),
        ExportFormat::Json => write_summary_json(&experiment.report, path),
    }
}

pub fn write_convergence_csv(experiment: &Experiment, path: &Path) -> Result<()> {
    let with_mean = experiment.config.trace_level.records_mean();
    let with_algorithm = experiment.report.config.algorithms.len() > 1;
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut header = Vec::new();
    if with_algorithm {
        header.push("algorithm");
    }
    header.extend(["problem", "run", "iteration", "best_fitness"]);
    if with_mean {
        header.push("mean_fitness");
    }
    w.write_record(&header).map_err(|e| csv_error(path, e))?;

    let config = &experiment.report.config;
    for o in &experiment.outcomes {
        let trace = &o.result.trace;
        for (i, best) in trace.best_fitness_per_iter.iter().enumerate() {
            let mut row = Vec::with_capacity(header.len());
            if with_algorithm {
                row.push(config.algorithms[o.algorithm].clone());
            }
            row.push(config.problems[o.problem].clone());
            row.push(o.run.to_string());
            row.push((i + 1).to_string());
            row.push(best.to_string());
            if with_mean {
                let mean = trace.mean_fitness_per_iter.as_ref().map(|m| m[i]);
                row.push(mean.map(|m| m.to_string()).unwrap_or_default());
            }
            w.write_record(&row).map_err(|e| csv_error(path, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary_json(report: &StatReport, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(text.as_bytes())
        .and_then(|_| file.write_all(b"\n"))
        .map_err(|e| Error::io(path, e))
}

pub fn read_summary_json(path: &Path) -> Result<StatReport> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "NA".into())
}

pub fn write_comparison_csv(table: &ComparisonTable, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut header: Vec<String> = [
        "problem",
        "fresh_mean",
        "fresh_std",
        "fresh_best",
        "paper_mean",
        "paper_std",
    ]
    .map(String::from)
    .to_vec();
    header.extend(table.competitors.iter().cloned());
    header.extend(["rank", "ranked_against", "within_band"].map(String::from));
    w.write_record(&header).map_err(|e| csv_error(path, e))?;
    for row in &table.rows {
        let mut rec = vec![
            row.problem_id.clone(),
            row.fresh_mean.to_string(),
            row.fresh_std.to_string(),
            row.fresh_best.to_string(),
            fmt_opt(row.paper_mean),
            fmt_opt(row.paper_std),
        ];
        rec.extend(row.competitors.iter().map(|(_, v)| fmt_opt(*v)));
        rec.push(row.rank.to_string());
        rec.push(row.ranked_against.to_string());
        rec.push(row.within_band.map(|b| b.to_string()).unwrap_or_else(|| "NA".into()));
        w.write_record(&rec).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the full output directory and returns its path.
pub fn export_experiment(
    experiment: &Experiment,
    out_root: &Path,
    comparison: Option<&ComparisonTable>,
) -> Result<PathBuf> {
    let dir = out_root.join(&experiment.report.config.name);
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    write_summary_json(&experiment.report, &dir.join("summary.json"))?;
    write_convergence_csv(experiment, &dir.join("convergence.csv"))?;
    if let Some(table) = comparison {
        write_comparison_csv(table, &dir.join("comparison.csv"))?;
    }
    if experiment.config.trace_level == TraceLevel::FullHistory {
        let traces = dir.join("traces");
        fs::create_dir_all(&traces).map_err(|e| Error::io(&traces, e))?;
        let config = &experiment.report.config;
        for o in &experiment.outcomes {
            let path = traces.join(format!(
                "{}_{}_run{:03}.json",
                config.algorithms[o.algorithm], config.problems[o.problem], o.run
            ));
            let text = serde_json::to_string(&o.result.trace).map_err(|e| Error::Parse {
                path: path.clone(),
                message: e.to_string(),
            })?;
            fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(dir)
}
