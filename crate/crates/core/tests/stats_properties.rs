use goose::rng::{split_seed, RandomSource, SeededSource};
use goose::stats::wilcoxon::{exact_p, midranks, normal_p};
use goose::stats::{rank_table, summarize, wilcoxon_rank_sum, ProblemMeans, WilcoxonMethod};
use proptest::prelude::*;

/// Test-only oracle: enumerate every size-`n1` labelling of the pooled ranks.
fn enumerate_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let n = ranks.len();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let (mut all, mut lo, mut hi) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let s: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        all += 1;
        // Midrank sums are multiples of 0.5, so a half-step guard is exact.
        lo += u64::from(s <= observed + 0.25);
        hi += u64::from(s >= observed - 0.25);
    }
    (2.0 * (lo.min(hi) as f64 / all as f64)).min(1.0)
}

fn sample(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![(0..5i32).prop_map(f64::from), -10.0..10.0f64], 1..=max_len)
}

fn pooled_ranks(a: &[f64], b: &[f64]) -> Vec<f64> {
    midranks(&a.iter().chain(b).copied().collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_matches_enumeration((a, b) in (sample(9), sample(9)).prop_filter("n <= 10", |(a, b)| a.len() + b.len() <= 10)) {
        let exact = exact_p(&pooled_ranks(&a, &b), a.len());
        prop_assert!((exact - enumerate_p(&a, &b)).abs() < 1e-15);
    }

    #[test]
    fn p_values_are_probabilities_and_symmetric(a in sample(20), b in sample(20)) {
        let ab = wilcoxon_rank_sum(&a, &b).unwrap();
        let ba = wilcoxon_rank_sum(&b, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab.p_value));
        prop_assert!((ab.p_value - ba.p_value).abs() < 1e-12);
    }

    #[test]
    fn rank_table_follows_relabelling(means in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 4), 1..6), rot in 1usize..4) {
        let names = ["a", "b", "c", "d"];
        let rows = |order: &[usize]| -> Vec<ProblemMeans> {
            means.iter().enumerate().map(|(i, m)| ProblemMeans {
                problem_id: format!("F{}", i + 1),
                means: order.iter().map(|&k| (names[k].to_string(), m[k])).collect(),
            }).collect()
        };
        let base = rank_table(&rows(&[0, 1, 2, 3])).unwrap();
        let order: Vec<usize> = (0..4).map(|k| (k + rot) % 4).collect();
        let permuted = rank_table(&rows(&order)).unwrap();
        for name in names {
            prop_assert_eq!(base.standing(name), permuted.standing(name));
        }
    }

    #[test]
    fn ranks_ignore_increasing_transforms(means in prop::collection::vec(-5.0..5.0f64, 2..6)) {
        let row = |f: &dyn Fn(f64) -> f64| vec![ProblemMeans {
            problem_id: "F1".into(),
            means: means.iter().enumerate().map(|(i, m)| (format!("alg{i}"), f(*m))).collect(),
        }];
        let plain = rank_table(&row(&|m| m)).unwrap();
        let moved = rank_table(&row(&|m| m.exp() * 3.0 + 1.0)).unwrap();
        prop_assert_eq!(&plain.rows[0].ranks, &moved.rows[0].ranks);
    }

    #[test]
    fn summary_is_translation_equivariant(values in prop::collection::vec(-1e3..1e3f64, 1..40), shift in -1e3..1e3f64) {
        let base = summarize(&values).unwrap();
        let moved: Vec<f64> = values.iter().map(|v| v + shift).collect();
        let shifted = summarize(&moved).unwrap();
        prop_assert!((shifted.mean - base.mean - shift).abs() <= 1e-9);
        prop_assert!((shifted.std - base.std).abs() <= 1e-9);
    }
}

/// Every labelling of untied data with n1 + n2 <= 10 and both samples of at
/// least two, except 2 vs 2.
#[test]
fn approximation_gap_is_small_without_ties() {
    let mut worst: f64 = 0.0;
    for n in 5..=10usize {
        let ranks: Vec<f64> = (1..=n).map(|r| r as f64).collect();
        for mask in 0u32..(1 << n) {
            let n1 = mask.count_ones() as usize;
            if n1 < 2 || n - n1 < 2 {
                continue;
            }
            let order: Vec<f64> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .chain((0..n).filter(|i| mask >> i & 1 == 0))
                .map(|i| ranks[i])
                .collect();
            worst = worst.max((exact_p(&order, n1) - normal_p(&order, n1)).abs());
        }
    }
    assert!(worst <= 0.08, "worst gap {worst}");
}

#[test]
fn gap_exceeds_bound_for_tiny_or_tied_samples() {
    // Size-one samples and the 2 vs 2 layout are where the normal
    // approximation is poorest; these are excluded from the gap property.
    let gap = |a: &[f64], b: &[f64]| {
        let r = pooled_ranks(a, b);
        (exact_p(&r, a.len()) - normal_p(&r, a.len())).abs()
    };
    assert!(gap(&[1.0], &[2.0, 3.0, 4.0]) > 0.12);
    assert!(gap(&[1.0, 2.0], &[3.0, 4.0]) > 0.08);
    // Heavy ties make the exact distribution lumpy.
    assert!(gap(&[3.0, 0.0, 4.0, 0.0], &[3.0, -5.1, 0.0]) > 0.1);
}

#[test]
fn identical_samples_are_not_significant() {
    let a = [1.0, 2.0, 2.0, 5.0, 7.0];
    let r = wilcoxon_rank_sum(&a, &a).unwrap();
    assert!(r.p_value >= 0.99);
}

#[test]
fn large_samples_use_normal_approximation() {
    let a: Vec<f64> = (0..13).map(f64::from).collect();
    let b: Vec<f64> = (0..12).map(|i| f64::from(i) + 0.5).collect();
    assert_eq!(wilcoxon_rank_sum(&a, &b).unwrap().method, WilcoxonMethod::NormalApproximation);
    assert_eq!(wilcoxon_rank_sum(&a[..12], &b).unwrap().method, WilcoxonMethod::Exact);
}

#[test]
fn calibration_under_the_null() {
    let trials = 1000;
    let mut rejections = 0;
    for t in 0..trials {
        let mut rng = SeededSource::new(split_seed(2024, t));
        let a: Vec<f64> = (0..30).map(|_| rng.standard_normal()).collect();
        let b: Vec<f64> = (0..30).map(|_| rng.standard_normal()).collect();
        if wilcoxon_rank_sum(&a, &b).unwrap().p_value < 0.05 {
            rejections += 1;
        }
    }
    let rate = f64::from(rejections) / trials as f64;
    assert!((0.03..=0.08).contains(&rate), "rejection rate {rate}");
}
