use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Best-fitness values of one algorithm on one problem, one per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub algorithm_id: String,
    pub problem_id: String,
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(
        algorithm_id: impl Into<String>,
        problem_id: impl Into<String>,
        values: Vec<f64>,
    ) -> Result<Self> {
        let algorithm_id = algorithm_id.into();
        let problem_id = problem_id.into();
        if values.is_empty() {
            return Err(Error::EmptySample(format!("{algorithm_id}/{problem_id}")));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "non-finite sample value {v} in {algorithm_id}/{problem_id}"
            )));
        }
        Ok(Self {
            algorithm_id,
            problem_id,
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (`n − 1` denominator); zero for one value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    let n = values.len();
    if n == 0 {
        return Err(Error::EmptySample("summary".into()));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Summary {
        n,
        mean,
        std,
        min,
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_summaries() {
        let s = summarize(&[3.0, 3.0, 3.0]).unwrap();
        assert_eq!((s.mean, s.std), (3.0, 0.0));
        let s = summarize(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((s.mean, s.std, s.min, s.max), (2.0, 1.0, 1.0, 3.0));
        let s = summarize(&[-7.5]).unwrap();
        assert_eq!((s.mean, s.std), (-7.5, 0.0));
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn sample_set_rejects_bad_values() {
        assert!(SampleSet::new("goose", "F1", vec![]).is_err());
        assert!(SampleSet::new("goose", "F1", vec![1.0, f64::NAN]).is_err());
        assert!(SampleSet::new("goose", "F1", vec![1.0, f64::INFINITY]).is_err());
        assert_eq!(SampleSet::new("goose", "F1", vec![1.0]).unwrap().values(), [1.0]);
    }
}
