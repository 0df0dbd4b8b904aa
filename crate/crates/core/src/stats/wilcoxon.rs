//! Two-sided Wilcoxon rank-sum test.
//!
//! Small problems (`n1 + n2 <= EXACT_MAX_TOTAL`) use the exact permutation
//! distribution of the rank sum, computed by counting size-`n1` subsets of
//! the pooled midranks per attainable sum. Ties are therefore handled exactly.
//! Larger problems use the normal approximation with tie and continuity
//! corrections.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

pub const EXACT_MAX_TOTAL: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMethod {
    Exact,
    NormalApproximation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Sum of the first sample's midranks in the pooled data.
    pub rank_sum_statistic: f64,
    pub p_value: f64,
    pub method: WilcoxonMethod,
}

/// Midranks of `pooled` (1-based, ties averaged).
pub fn midranks(pooled: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start..end share ranks start+1..=end.
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

fn check(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample("wilcoxon rank-sum input".into()));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::InvalidConfig("NaN in wilcoxon rank-sum input".into()));
    }
    Ok(())
}

/// Picks the method from the pooled sample size.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    let method = if a.len() + b.len() <= EXACT_MAX_TOTAL {
        WilcoxonMethod::Exact
    } else {
        WilcoxonMethod::NormalApproximation
    };
    wilcoxon_with_method(a, b, method)
}

pub fn wilcoxon_with_method(a: &[f64], b: &[f64], method: WilcoxonMethod) -> Result<WilcoxonResult> {
    check(a, b)?;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let w: f64 = ranks[..a.len()].iter().sum();
    let p_value = match method {
        WilcoxonMethod::Exact => exact_p(&ranks, a.len()),
        WilcoxonMethod::NormalApproximation => normal_p(&ranks, a.len()),
    };
    Ok(WilcoxonResult {
        rank_sum_statistic: w,
        p_value,
        method,
    })
}

/// Exact two-sided p-value of the rank sum of the first `n1` entries of `ranks`.
pub fn exact_p(ranks: &[f64], n1: usize) -> f64 {
    // Doubled midranks are integers.
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let observed: usize = doubled[..n1].iter().sum();

    // counts[k][s]: number of k-subsets with doubled rank sum s.
    let mut counts = vec![vec![0u64; total + 1]; n1 + 1];
    counts[0][0] = 1;
    for &r in &doubled {
        for k in (1..=n1).rev() {
            for s in (r..=total).rev() {
                counts[k][s] += counts[k - 1][s - r];
            }
        }
    }
    let dist = &counts[n1];
    let all: u64 = dist.iter().sum();
    let lower: u64 = dist[..=observed].iter().sum();
    let upper: u64 = dist[observed..].iter().sum();
    let tail = lower.min(upper) as f64 / all as f64;
    (2.0 * tail).min(1.0)
}

/// Normal-approximation two-sided p-value with tie and continuity corrections.
pub fn normal_p(ranks: &[f64], n1: usize) -> f64 {
    let n = ranks.len() as f64;
    let n1f = n1 as f64;
    let n2f = n - n1f;
    let w: f64 = ranks[..n1].iter().sum();
    let mean = n1f * (n + 1.0) / 2.0;

    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let correction = if n > 1.0 { tie_term / (n * (n - 1.0)) } else { 0.0 };
    let var = n1f * n2f / 12.0 * ((n + 1.0) - correction);
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::standard();
    (2.0 * normal.sf(z)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_triples() {
        let r = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.method, WilcoxonMethod::Exact);
        assert_eq!(r.rank_sum_statistic, 6.0);
        assert!((r.p_value - 0.1).abs() < 1e-15);
        let r = wilcoxon_rank_sum(&[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!((r.p_value - 0.1).abs() < 1e-15);
    }

    #[test]
    fn identical_samples() {
        let a = [2.0, 2.0, 5.0, 1.0];
        let r = wilcoxon_rank_sum(&a, &a).unwrap();
        assert!(r.p_value >= 0.99);
        let c = [7.0; 5];
        assert_eq!(wilcoxon_rank_sum(&c, &c).unwrap().p_value, 1.0);
        let big = vec![3.0; 30];
        let r = wilcoxon_rank_sum(&big, &big).unwrap();
        assert_eq!(r.method, WilcoxonMethod::NormalApproximation);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn midranks_average_ties() {
        assert_eq!(midranks(&[10.0, 20.0, 10.0, 30.0]), [1.5, 3.0, 1.5, 4.0]);
    }

    #[test]
    fn normal_matches_textbook_value() {
        // Complete separation of 30 vs 30 puts z at about 6.6.
        let a: Vec<f64> = (0..30).map(f64::from).collect();
        let b: Vec<f64> = (30..60).map(f64::from).collect();
        let r = wilcoxon_rank_sum(&a, &b).unwrap();
        assert!(r.p_value < 1e-9);
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(wilcoxon_rank_sum(&[], &[1.0]).is_err());
        assert!(wilcoxon_rank_sum(&[f64::NAN], &[1.0]).is_err());
    }
}
