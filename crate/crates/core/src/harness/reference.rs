//! Published comparison tables and the diff against a fresh report.
//!
//! Values live in `reference_tables.tsv` exactly as printed (`NA` for a
//! missing cell). Each table compares algorithms on one statistic: the mean
//! best fitness over runs, or a single best result.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::report::{ProblemReport, StatReport};
use crate::error::{Error, Result};
use crate::stats::{rank_table, ProblemMeans, RankTable};

pub(crate) const RAW_TABLES: &str = include_str!("reference_tables.tsv");

/// Ids accepted by [`reference_table`], in presentation order.
pub const TABLE_IDS: [&str; 6] = ["T2", "T3", "T4", "T15", "T17", "T18"];

/// Column label of the goose algorithm in the printed tables.
pub const PAPER_GOOSE: &str = "GOOSE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatistic {
    /// Mean (and std) of the best fitness over independent runs.
    Mean,
    /// The single best result reported.
    Best,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceEntry {
    pub table_id: String,
    pub algorithm_id: String,
    pub problem_id: String,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    /// Reported design variables, where the table prints them.
    pub design: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub id: String,
    pub title: String,
    pub statistic: TableStatistic,
    /// Column order as printed.
    pub algorithms: Vec<String>,
    /// Row order as printed.
    pub problems: Vec<String>,
    pub entries: Vec<ReferenceEntry>,
}

impl ReferenceTable {
    pub fn entry(&self, algorithm_id: &str, problem_id: &str) -> Option<&ReferenceEntry> {
        self.entries
            .iter()
            .find(|e| e.algorithm_id == algorithm_id && e.problem_id == problem_id)
    }

    /// Rank table over the printed means. Problems where any column is `NA`
    /// are skipped.
    pub fn rank(&self) -> Result<RankTable> {
        let rows: Vec<ProblemMeans> = self
            .problems
            .iter()
            .filter_map(|p| {
                let means: Option<Vec<(String, f64)>> = self
                    .algorithms
                    .iter()
                    .map(|a| self.entry(a, p).and_then(|e| e.mean).map(|m| (a.clone(), m)))
                    .collect();
                means.map(|means| ProblemMeans {
                    problem_id: p.clone(),
                    means,
                })
            })
            .collect();
        rank_table(&rows)
    }
}

fn describe(id: &str) -> (&'static str, TableStatistic) {
    match id {
        "T2" => ("19 classical benchmarks, dim 10", TableStatistic::Mean),
        "T3" => ("five classical benchmarks, dim 30", TableStatistic::Mean),
        "T4" => ("CEC-C06 2019 benchmarks", TableStatistic::Mean),
        "T15" => ("welded beam design", TableStatistic::Mean),
        "T17" => ("three-unit economic load dispatch (cost, $/h)", TableStatistic::Best),
        "T18" => ("pressure vessel design (best cost)", TableStatistic::Best),
        _ => unreachable!("table ids are fixed"),
    }
}

fn cell(text: &str) -> std::result::Result<Option<f64>, String> {
    match text {
        "NA" => Ok(None),
        t => t.parse().map(Some).map_err(|e| format!("`{t}`: {e}")),
    }
}

fn parse_tables(raw: &str) -> std::result::Result<Vec<ReferenceTable>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .from_reader(raw.as_bytes());
    let mut tables: Vec<ReferenceTable> = TABLE_IDS
        .iter()
        .map(|&id| {
            let (title, statistic) = describe(id);
            ReferenceTable {
                id: id.to_string(),
                title: title.to_string(),
                statistic,
                algorithms: Vec::new(),
                problems: Vec::new(),
                entries: Vec::new(),
            }
        })
        .collect();
    for record in reader.records() {
        let r = record.map_err(|e| e.to_string())?;
        let table = tables
            .iter_mut()
            .find(|t| t.id == r[0])
            .ok_or_else(|| format!("unknown table `{}`", &r[0]))?;
        let design = match r[5].trim() {
            "" => None,
            d => Some(
                d.split_whitespace()
                    .map(|v| v.parse::<f64>().map_err(|e| e.to_string()))
                    .collect::<std::result::Result<Vec<_>, _>>()?,
            ),
        };
        let entry = ReferenceEntry {
            table_id: r[0].to_string(),
            algorithm_id: r[1].to_string(),
            problem_id: r[2].to_string(),
            mean: cell(&r[3])?,
            std: cell(&r[4])?,
            design,
        };
        if !table.algorithms.contains(&entry.algorithm_id) {
            table.algorithms.push(entry.algorithm_id.clone());
        }
        if !table.problems.contains(&entry.problem_id) {
            table.problems.push(entry.problem_id.clone());
        }
        table.entries.push(entry);
    }
    Ok(tables)
}

pub fn reference_tables() -> &'static [ReferenceTable] {
    static TABLES: OnceLock<Vec<ReferenceTable>> = OnceLock::new();
    TABLES.get_or_init(|| parse_tables(RAW_TABLES).expect("embedded reference tables parse"))
}

pub fn reference_table(id: &str) -> Result<&'static ReferenceTable> {
    reference_tables()
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownTable {
            id: id.to_string(),
            valid: TABLE_IDS.iter().map(|s| s.to_string()).collect(),
        })
}

/// Reference table that a suite or engineering problem reproduces, if any.
pub fn table_for(source: &str) -> Option<&'static str> {
    match source {
        "classical19" => Some("T2"),
        "five_classical30" => Some("T3"),
        "cec2019" => Some("T4"),
        "welded_beam" => Some("T15"),
        "eld" => Some("T17"),
        "pressure_vessel" => Some("T18"),
        _ => None,
    }
}

/// Acceptance bands on a fresh result. `None` where no band is defined.
pub fn within_band(table_id: &str, fresh: &ProblemReport) -> Option<bool> {
    let s = &fresh.summary;
    let all_feasible = fresh.feasibility.as_ref().is_some_and(|f| f.feasible_runs == f.runs);
    match (table_id, fresh.problem_id.as_str()) {
        ("T2", "F1") => Some(s.mean < 1e-2),
        ("T2", "F9") => Some(s.mean < 0.5),
        ("T2", "F11") => Some(s.mean < 0.1),
        ("T2", "F16") => Some((s.mean + 1.0316).abs() <= 1e-3),
        ("T2", "F17") => Some((s.mean - 0.3979).abs() <= 1e-3),
        ("T2", "F18") => Some((s.mean - 3.0).abs() <= 1e-3 && s.std <= 1e-3),
        ("T2", "F19") => Some((s.mean + 3.8628).abs() <= 1e-2),
        ("T15", "welded_beam") => Some((2.0..=4.5).contains(&s.mean) && all_feasible),
        ("T18", "pressure_vessel") => Some(s.min <= 7000.0 && fresh.best_run_feasible()),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub problem_id: String,
    pub fresh_mean: f64,
    pub fresh_std: f64,
    pub fresh_best: f64,
    pub paper_mean: Option<f64>,
    pub paper_std: Option<f64>,
    /// Printed values of the other algorithms, in column order.
    pub competitors: Vec<(String, Option<f64>)>,
    /// Competition rank of the fresh statistic among the printed competitors
    /// (1 = best); `NA` competitors are left out.
    pub rank: usize,
    pub ranked_against: usize,
    pub within_band: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub table_id: String,
    pub statistic: TableStatistic,
    pub algorithm_id: String,
    pub competitors: Vec<String>,
    pub rows: Vec<ComparisonRow>,
}

/// Lines up the report's first algorithm against a printed table.
pub fn compare_to_reference(report: &StatReport, table_id: &str) -> Result<ComparisonTable> {
    let table = reference_table(table_id)?;
    let algorithm_id = report
        .config
        .algorithms
        .first()
        .cloned()
        .ok_or_else(|| Error::InvalidConfig("report lists no algorithms".into()))?;
    let competitors: Vec<String> = table
        .algorithms
        .iter()
        .filter(|a| *a != PAPER_GOOSE)
        .cloned()
        .collect();

    let mut rows = Vec::new();
    for problem_id in &table.problems {
        let Some(fresh) = report.problem(&algorithm_id, problem_id) else {
            continue;
        };
        let paper = table.entry(PAPER_GOOSE, problem_id);
        let fresh_value = match table.statistic {
            TableStatistic::Mean => fresh.summary.mean,
            TableStatistic::Best => fresh.summary.min,
        };
        let printed: Vec<(String, Option<f64>)> = competitors
            .iter()
            .map(|a| (a.clone(), table.entry(a, problem_id).and_then(|e| e.mean)))
            .collect();
        let known: Vec<f64> = printed.iter().filter_map(|(_, v)| *v).collect();
        rows.push(ComparisonRow {
            problem_id: problem_id.clone(),
            fresh_mean: fresh.summary.mean,
            fresh_std: fresh.summary.std,
            fresh_best: fresh.summary.min,
            paper_mean: paper.and_then(|e| e.mean),
            paper_std: paper.and_then(|e| e.std),
            rank: 1 + known.iter().filter(|v| **v < fresh_value).count(),
            ranked_against: known.len(),
            competitors: printed,
            within_band: within_band(table_id, fresh),
        });
    }
    if rows.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "report has no problems from table {table_id} (rows: {})",
            table.problems.join(", ")
        )));
    }
    Ok(ComparisonTable {
        table_id: table.id.clone(),
        statistic: table.statistic,
        algorithm_id,
        competitors,
        rows,
    })
}
