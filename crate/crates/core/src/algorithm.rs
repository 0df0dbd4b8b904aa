//! Optimizer variants selectable by name.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::goose::{optimize_traced, ExplorationAnchor, GooseParams, RunResult, TraceLevel};
use crate::problem::Problem;

pub trait Optimizer: Send + Sync {
    fn id(&self) -> &str;

    fn params(&self) -> &GooseParams;

    fn run(&self, problem: &Problem, seed: u64, level: TraceLevel) -> Result<RunResult>;
}

/// The goose optimizer under a fixed parameter set.
#[derive(Debug, Clone)]
pub struct Goose {
    id: String,
    params: GooseParams,
}

impl Goose {
    pub fn new(id: impl Into<String>, params: GooseParams) -> Self {
        Self {
            id: id.into(),
            params,
        }
    }
}

impl Optimizer for Goose {
    fn id(&self) -> &str {
        &self.id
    }

    fn params(&self) -> &GooseParams {
        &self.params
    }

    fn run(&self, problem: &Problem, seed: u64, level: TraceLevel) -> Result<RunResult> {
        optimize_traced(problem, &self.params, seed, level)
    }
}

type Factory = fn(GooseParams) -> Box<dyn Optimizer>;

/// Name → constructor map. The base parameters passed to [`build`] supply the
/// budget; each entry fixes the variant-specific switches.
///
/// [`build`]: AlgorithmRegistry::build
pub struct AlgorithmRegistry {
    entries: BTreeMap<&'static str, (&'static str, Factory)>,
}

impl Default for AlgorithmRegistry {
    fn default() -> Self {
        let mut registry = Self {
            entries: BTreeMap::new(),
        };
        registry.register(
            "goose",
            "exploration scattered around the best position",
            |params| {
                Box::new(Goose::new(
                    "goose",
                    GooseParams {
                        anchor: ExplorationAnchor::BestPosition,
                        ..params
                    },
                ))
            },
        );
        registry.register(
            "goose-xt",
            "exploration scattered around each agent's own position",
            |params| {
                Box::new(Goose::new(
                    "goose-xt",
                    GooseParams {
                        anchor: ExplorationAnchor::CurrentPosition,
                        ..params
                    },
                ))
            },
        );
        registry
    }
}

impl AlgorithmRegistry {
    pub fn register(&mut self, id: &'static str, summary: &'static str, factory: Factory) {
        self.entries.insert(id, (summary, factory));
    }

    pub fn ids(&self) -> Vec<String> {
        self.entries.keys().map(|k| k.to_string()).collect()
    }

    pub fn describe(&self) -> impl Iterator<Item = (&'static str, &'static str)> + '_ {
        self.entries.iter().map(|(id, (summary, _))| (*id, *summary))
    }

    pub fn build(&self, id: &str, params: GooseParams) -> Result<Box<dyn Optimizer>> {
        let (_, factory) = self.entries.get(id).ok_or_else(|| Error::UnknownAlgorithm {
            id: id.to_string(),
            valid: self.ids(),
        })?;
        Ok(factory(params))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds_variants_by_name() {
        let reg = AlgorithmRegistry::default();
        assert_eq!(reg.ids(), vec!["goose", "goose-xt"]);
        let a = reg.build("goose-xt", GooseParams::with_budget(5, 7)).unwrap();
        assert_eq!(a.id(), "goose-xt");
        assert_eq!(a.params().anchor, ExplorationAnchor::CurrentPosition);
        assert_eq!(a.params().max_iters, 7);
        let err = reg.build("pso", GooseParams::default()).err().unwrap();
        assert!(err.to_string().contains("goose-xt"));
    }
}
