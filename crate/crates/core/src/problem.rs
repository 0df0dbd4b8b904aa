//! Objective functions over a bounded real box.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounds")]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Deserialize)]
struct RawBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBounds> for Bounds {
    type Error = Error;

    fn try_from(raw: RawBounds) -> Result<Self> {
        Bounds::new(raw.lower, raw.upper)
    }
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBounds("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
                return Err(Error::InvalidBounds(format!(
                    "dimension {j}: lower {lo} must be finite and strictly below upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same `[low, high]` interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(vec![low; dim], vec![high; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| 0.5 * (lo + hi))
            .collect()
    }
}

/// A scalar function of a real vector.
///
/// Implementations are pure apart from the optional noise stream, which only
/// stochastic benchmarks consume.
pub trait Objective: Send + Sync {
    fn evaluate(&self, x: &[f64], noise: &mut dyn RandomSource) -> f64;

    /// Whether [`Objective::evaluate`] reads from the noise stream.
    fn is_stochastic(&self) -> bool {
        false
    }
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn evaluate(&self, x: &[f64], _noise: &mut dyn RandomSource) -> f64 {
        self(x)
    }
}

/// Returns zero for every uniform draw; used when a stochastic objective is
/// evaluated without a random source.
struct Silent;

impl RandomSource for Silent {
    fn uniform(&mut self) -> f64 {
        0.0
    }

    fn standard_normal(&mut self) -> f64 {
        0.0
    }
}

/// Maximum constraint violation of a point; `<= 0` means feasible.
pub type ViolationFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A named minimization problem.
#[derive(Clone)]
pub struct Problem {
    pub id: String,
    pub bounds: Bounds,
    pub objective: Arc<dyn Objective>,
    pub known_optimum: Option<f64>,
    pub optimum_location: Option<Vec<f64>>,
    /// Present for constrained problems folded into a penalized objective.
    pub max_violation: Option<ViolationFn>,
    /// Free-form markers carried into reports (e.g. `unofficial`).
    pub flags: Vec<String>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("dim", &self.dim())
            .field("known_optimum", &self.known_optimum)
            .field("flags", &self.flags)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn new(id: impl Into<String>, bounds: Bounds, objective: impl Objective + 'static) -> Self {
        Self {
            id: id.into(),
            bounds,
            objective: Arc::new(objective),
            known_optimum: None,
            optimum_location: None,
            max_violation: None,
            flags: Vec::new(),
        }
    }

    pub fn with_optimum(mut self, value: f64, location: Option<Vec<f64>>) -> Self {
        self.known_optimum = Some(value);
        self.optimum_location = location;
        self
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    /// Evaluates the objective after checking the dimension.
    ///
    /// Stochastic objectives draw their noise from `rng`; with `None` the
    /// noise term is zero.
    pub fn evaluate(&self, x: &[f64], rng: Option<&mut dyn RandomSource>) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(match rng {
            Some(rng) => self.objective.evaluate(x, rng),
            None => self.objective.evaluate(x, &mut Silent),
        })
    }

    /// Unchecked evaluation used on the optimizer's hot path.
    pub(crate) fn evaluate_raw(&self, x: &[f64], rng: &mut dyn RandomSource) -> f64 {
        self.objective.evaluate(x, rng)
    }

    pub fn violation(&self, x: &[f64]) -> Option<f64> {
        self.max_violation.as_ref().map(|v| v(x))
    }
}
