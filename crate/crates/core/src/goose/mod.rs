//! The goose-guarding swarm optimizer.
//!
//! Every agent, every iteration, draws a phase variable. Above the phase
//! threshold it takes one of two "falling stone" exploitation moves; below it
//! it scatters around the best position with a Gaussian whose scale is the
//! running minimum total time times a linearly decaying `alpha`. New
//! positions are clamped into the box and always replace the old ones; only
//! the global best is kept greedily.

pub mod engine;
pub mod equations;
pub mod params;
pub mod trace;

pub use engine::{optimize, optimize_traced, optimize_with_source, step, StepReport, SwarmState};
pub use equations::IterationDraws;
pub use params::{ExplorationAnchor, GooseParams};
pub use trace::{Branch, BranchCounts, RunResult, RunTrace, TraceLevel};
