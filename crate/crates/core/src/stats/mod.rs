//! Descriptive statistics, Wilcoxon rank-sum tests and rank tables.

pub mod ranking;
pub mod summary;
pub mod wilcoxon;

pub use ranking::{rank_table, FunctionGroup, ProblemMeans, RankTable};
pub use summary::{summarize, SampleSet, Summary};
pub use wilcoxon::{wilcoxon_rank_sum, WilcoxonMethod, WilcoxonResult};
