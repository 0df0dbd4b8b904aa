//! Goose-guarding swarm optimization with its evaluation toolkit.
//!
//! * [`goose`] — the optimizer itself.
//! * [`benchmarks`] — classical and CEC 2019 test functions, registered by id.
//! * [`engineering`] — constrained design problems folded into penalized
//!   objectives.
//! * [`stats`] — summaries, Wilcoxon rank-sum tests and rank tables.
//! * [`harness`] — multi-run experiments, reference tables and exports.
//! * [`selftest`] — the acceptance checks, runnable from tests or the CLI.

pub mod algorithm;
pub mod benchmarks;
pub mod engineering;
pub mod error;
pub mod goose;
pub mod harness;
pub mod problem;
pub mod rng;
pub mod selftest;
pub mod stats;

pub use algorithm::{AlgorithmRegistry, Optimizer};
pub use error::{Error, Result};
pub use problem::{Bounds, Objective, Problem};
