//! Per-problem ranking of algorithms by mean best fitness.
//!
//! Rank 1 is the lowest mean. Equal means share the lower (better) rank and
//! are flagged; the next distinct mean skips the shared places (competition
//! ranking).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Benchmark family a problem id belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionGroup {
    Unimodal,
    Multimodal,
    FixedDimension,
    Other,
}

impl FunctionGroup {
    /// F1–F7 unimodal, F8–F13 multimodal, F14–F19 fixed-dimension.
    pub fn of(problem_id: &str) -> Self {
        let number = problem_id
            .strip_prefix('F')
            .and_then(|n| n.parse::<usize>().ok());
        match number {
            Some(1..=7) => Self::Unimodal,
            Some(8..=13) => Self::Multimodal,
            Some(14..=19) => Self::FixedDimension,
            _ => Self::Other,
        }
    }
}

/// Mean best fitness of each algorithm on one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemMeans {
    pub problem_id: String,
    pub means: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub problem_id: String,
    /// Indexed like [`RankTable::algorithms`].
    pub ranks: Vec<usize>,
    pub tied: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupRank {
    pub rank_sum: usize,
    pub problems: usize,
}

impl GroupRank {
    pub fn average(&self) -> f64 {
        self.rank_sum as f64 / self.problems as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmStanding {
    pub algorithm_id: String,
    pub overall: GroupRank,
    pub groups: BTreeMap<FunctionGroup, GroupRank>,
    /// `places[k]` counts problems where the algorithm ranked `k + 1`.
    pub places: Vec<usize>,
}

impl AlgorithmStanding {
    pub fn first_places(&self) -> usize {
        self.places.first().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub algorithms: Vec<String>,
    pub rows: Vec<RankRow>,
    pub standings: Vec<AlgorithmStanding>,
}

impl RankTable {
    pub fn standing(&self, algorithm_id: &str) -> Option<&AlgorithmStanding> {
        self.standings.iter().find(|s| s.algorithm_id == algorithm_id)
    }

    pub fn has_ties(&self) -> bool {
        self.rows.iter().any(|r| r.tied.iter().any(|&t| t))
    }
}

/// Competition ranks of `means` (lowest first) with tie flags.
pub fn rank_means(means: &[f64]) -> (Vec<usize>, Vec<bool>) {
    let ranks: Vec<usize> = means
        .iter()
        .map(|m| 1 + means.iter().filter(|o| o.total_cmp(m).is_lt()).count())
        .collect();
    let tied = means
        .iter()
        .enumerate()
        .map(|(i, m)| means.iter().enumerate().any(|(j, o)| i != j && o == m))
        .collect();
    (ranks, tied)
}

/// Ranks every algorithm on every problem and aggregates per group.
///
/// All problems must list the same algorithms (in any order), at least two.
pub fn rank_table(problems: &[ProblemMeans]) -> Result<RankTable> {
    let first = problems
        .first()
        .ok_or_else(|| Error::InvalidConfig("rank table needs at least one problem".into()))?;
    let algorithms: Vec<String> = first.means.iter().map(|(a, _)| a.clone()).collect();
    if algorithms.len() < 2 {
        return Err(Error::InvalidConfig(
            "rank table needs at least two algorithms".into(),
        ));
    }

    let mut rows = Vec::with_capacity(problems.len());
    for p in problems {
        let mut means = Vec::with_capacity(algorithms.len());
        for alg in &algorithms {
            let found = p.means.iter().find(|(a, _)| a == alg).map(|(_, m)| *m);
            match found {
                Some(m) if !m.is_nan() => means.push(m),
                _ => {
                    return Err(Error::InvalidConfig(format!(
                        "problem {} has no usable mean for {alg}",
                        p.problem_id
                    )))
                }
            }
        }
        if p.means.len() != algorithms.len() {
            return Err(Error::InvalidConfig(format!(
                "problem {} lists {} algorithms, expected {}",
                p.problem_id,
                p.means.len(),
                algorithms.len()
            )));
        }
        let (ranks, tied) = rank_means(&means);
        rows.push(RankRow {
            problem_id: p.problem_id.clone(),
            ranks,
            tied,
        });
    }

    let standings = algorithms
        .iter()
        .enumerate()
        .map(|(a, alg)| {
            let mut overall = GroupRank {
                rank_sum: 0,
                problems: 0,
            };
            let mut groups: BTreeMap<FunctionGroup, GroupRank> = BTreeMap::new();
            let mut places = vec![0; algorithms.len()];
            for row in &rows {
                let r = row.ranks[a];
                overall.rank_sum += r;
                overall.problems += 1;
                let g = groups
                    .entry(FunctionGroup::of(&row.problem_id))
                    .or_insert(GroupRank {
                        rank_sum: 0,
                        problems: 0,
                    });
                g.rank_sum += r;
                g.problems += 1;
                places[r - 1] += 1;
            }
            AlgorithmStanding {
                algorithm_id: alg.clone(),
                overall,
                groups,
                places,
            }
        })
        .collect();

    Ok(RankTable {
        algorithms,
        rows,
        standings,
    })
}
