use serde::{Deserialize, Serialize};

/// How much per-iteration detail a run keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TraceLevel {
    BestOnly,
    #[default]
    BestAndMean,
    FullHistory,
}

impl TraceLevel {
    pub fn records_mean(self) -> bool {
        !matches!(self, TraceLevel::BestOnly)
    }
}

impl std::str::FromStr for TraceLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "best_only" => Ok(TraceLevel::BestOnly),
            "best_and_mean" => Ok(TraceLevel::BestAndMean),
            "full_history" => Ok(TraceLevel::FullHistory),
            other => Err(format!(
                "unknown trace level `{other}` (expected best_only, best_and_mean or full_history)"
            )),
        }
    }
}

/// Position snapshots are only kept for small swarms in low dimension.
pub const HISTORY_MAX_DIM: usize = 3;
pub const HISTORY_MAX_AGENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunTrace {
    /// Best-so-far fitness after each iteration.
    pub best_fitness_per_iter: Vec<f64>,
    /// Mean population fitness after each iteration.
    pub mean_fitness_per_iter: Option<Vec<f64>>,
    /// First coordinate of the first agent after each iteration.
    pub trajectory: Option<Vec<f64>>,
    /// All agent positions after each iteration (`[iter][agent][dim]`).
    pub search_history: Option<Vec<Vec<Vec<f64>>>>,
}

/// Which update rule moved an agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Heavy,
    Light,
    Explore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BranchCounts {
    pub heavy: usize,
    pub light: usize,
    pub explore: usize,
}

impl BranchCounts {
    pub fn record(&mut self, branch: Branch) {
        match branch {
            Branch::Heavy => self.heavy += 1,
            Branch::Light => self.light += 1,
            Branch::Explore => self.explore += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.heavy + self.light + self.explore
    }

    pub fn add(&mut self, other: BranchCounts) {
        self.heavy += other.heavy;
        self.light += other.light;
        self.explore += other.explore;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_x: Vec<f64>,
    pub best_fitness: f64,
    pub trace: RunTrace,
    pub evaluations: u64,
    pub seed: u64,
    pub branch_counts: BranchCounts,
}
