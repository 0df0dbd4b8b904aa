//! Benchmark functions registered by id, and the three experiment suites.

pub mod cec2019;
pub mod classical;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};

pub use cec2019::{cec2019, Cec2019Data, UNOFFICIAL_FLAG};
pub use classical::classical;

/// Dimension of the scalable classical functions in the 19-function suite.
pub const CLASSICAL_DIM: usize = 10;

/// Dimension of the five-function classical suite.
pub const FIVE_CLASSICAL_DIM: usize = 30;

/// Functions of the five-function suite.
pub const FIVE_CLASSICAL_IDS: [usize; 5] = [1, 5, 8, 9, 11];

/// Flag carried by problems whose box was replaced with `[-5.12, 5.12]`.
pub const NARROW_RANGE_FLAG: &str = "range_5.12";

type Factory = Arc<dyn Fn() -> Problem + Send + Sync>;

/// Id → problem constructor.
#[derive(Clone)]
pub struct ProblemRegistry {
    factories: BTreeMap<String, Factory>,
}

impl fmt::Debug for ProblemRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

impl Default for ProblemRegistry {
    fn default() -> Self {
        Self::with_cec_data(None)
    }
}

impl ProblemRegistry {
    /// All benchmark functions; CEC04–CEC10 use `data` when it covers them.
    pub fn with_cec_data(data: Option<Arc<Cec2019Data>>) -> Self {
        let mut registry = Self {
            factories: BTreeMap::new(),
        };
        for n in 1..=19 {
            registry.register(format!("F{n}"), move || {
                classical(n, CLASSICAL_DIM).expect("registered classical id")
            });
        }
        for n in 1..=10 {
            let data = data.clone();
            registry.register(format!("CEC{n:02}"), move || {
                cec2019(n, data.as_deref()).expect("registered cec id")
            });
        }
        registry
    }

    pub fn register(
        &mut self,
        id: impl Into<String>,
        factory: impl Fn() -> Problem + Send + Sync + 'static,
    ) {
        self.factories.insert(id.into(), Arc::new(factory));
    }

    /// Registered ids in sorted order.
    pub fn ids(&self) -> Vec<String> {
        self.factories.keys().cloned().collect()
    }

    pub fn make(&self, id: &str) -> Result<Problem> {
        self.factories
            .get(id)
            .map(|f| f())
            .ok_or_else(|| Error::UnknownProblem {
                id: id.to_string(),
                valid: self.ids(),
            })
    }

    /// Every registered problem, sorted by id.
    pub fn all(&self) -> Vec<Problem> {
        self.factories.values().map(|f| f()).collect()
    }
}

/// Builds a problem from the default registry.
pub fn make_problem(id: &str) -> Result<Problem> {
    ProblemRegistry::default().make(id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    #[serde(rename = "classical19")]
    Classical19,
    #[serde(rename = "five_classical30")]
    FiveClassical30,
    #[serde(rename = "cec2019")]
    Cec2019,
}

impl SuiteId {
    pub const ALL: [SuiteId; 3] = [Self::Classical19, Self::FiveClassical30, Self::Cec2019];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Classical19 => "classical19",
            Self::FiveClassical30 => "five_classical30",
            Self::Cec2019 => "cec2019",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// A suite and its configuration switches.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    /// Replace the five-function suite's per-function ranges with `[-5.12, 5.12]`.
    pub narrow_range: bool,
    pub cec_data: Option<Arc<Cec2019Data>>,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId) -> Self {
        Self {
            suite,
            narrow_range: false,
            cec_data: None,
        }
    }

    pub fn problems(&self) -> Vec<Problem> {
        match self.suite {
            SuiteId::Classical19 => (1..=19)
                .map(|n| classical(n, CLASSICAL_DIM).expect("classical id"))
                .collect(),
            SuiteId::FiveClassical30 => FIVE_CLASSICAL_IDS
                .iter()
                .map(|&n| {
                    let p = classical(n, FIVE_CLASSICAL_DIM).expect("classical id");
                    if self.narrow_range {
                        narrowed(p)
                    } else {
                        p
                    }
                })
                .collect(),
            SuiteId::Cec2019 => (1..=10)
                .map(|n| cec2019(n, self.cec_data.as_deref()).expect("cec id"))
                .collect(),
        }
    }
}

/// Rebinds a problem to `[-5.12, 5.12]^dim`, dropping an optimum that falls
/// outside the new box.
fn narrowed(mut p: Problem) -> Problem {
    p.bounds = Bounds::uniform(p.dim(), -5.12, 5.12).expect("static bounds");
    let outside = p
        .optimum_location
        .as_ref()
        .is_some_and(|loc| !p.bounds.contains(loc));
    if outside {
        p.known_optimum = None;
        p.optimum_location = None;
    }
    p.with_flag(NARROW_RANGE_FLAG)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_dims_and_ranges() {
        let f1 = make_problem("F1").unwrap();
        assert_eq!(f1.dim(), 10);
        assert_eq!(f1.bounds.lower()[0], -100.0);
        assert_eq!(f1.known_optimum, Some(0.0));

        let f8 = make_problem("F8").unwrap();
        assert!((f8.known_optimum.unwrap() - -418.9829 * 10.0).abs() < 1e-3);

        let cec03 = make_problem("CEC03").unwrap();
        assert_eq!(cec03.dim(), 18);
        assert_eq!(cec03.bounds.upper()[0], 4.0);
        assert_eq!(cec03.known_optimum, Some(1.0));

        let dims: Vec<usize> = ["CEC01", "CEC02", "CEC04", "CEC10"]
            .iter()
            .map(|id| make_problem(id).unwrap().dim())
            .collect();
        assert_eq!(dims, [9, 16, 10, 10]);
        assert_eq!(make_problem("CEC02").unwrap().bounds.upper()[0], 16384.0);
    }

    #[test]
    fn unknown_id_lists_valid_ids() {
        let err = make_problem("F99").unwrap_err().to_string();
        assert!(err.contains("F99") && err.contains("CEC10") && err.contains("F19"));
    }

    #[test]
    fn suites_have_table_shapes() {
        let c19 = SuiteConfig::new(SuiteId::Classical19).problems();
        let dims: Vec<usize> = c19.iter().map(Problem::dim).collect();
        let mut expected = vec![10; 13];
        expected.extend([2, 4, 2, 2, 2, 3]);
        assert_eq!(dims, expected);

        let five = SuiteConfig::new(SuiteId::FiveClassical30).problems();
        let ids: Vec<&str> = five.iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["F1", "F5", "F8", "F9", "F11"]);
        assert!(five.iter().all(|p| p.dim() == 30));

        assert_eq!(SuiteConfig::new(SuiteId::Cec2019).problems().len(), 10);
    }

    #[test]
    fn narrow_range_flag() {
        let cfg = SuiteConfig {
            narrow_range: true,
            ..SuiteConfig::new(SuiteId::FiveClassical30)
        };
        let five = cfg.problems();
        assert!(five.iter().all(|p| p.bounds.upper()[0] == 5.12));
        assert!(five.iter().all(|p| p.flags.iter().any(|f| f == NARROW_RANGE_FLAG)));
        let f8 = five.iter().find(|p| p.id == "F8").unwrap();
        assert!(f8.optimum_location.is_none());
        let f1 = five.iter().find(|p| p.id == "F1").unwrap();
        assert_eq!(f1.known_optimum, Some(0.0));
    }

    #[test]
    fn suite_ids_parse() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert!("cec2017".parse::<SuiteId>().is_err());
    }
}
