use goose::benchmarks::make_problem;
use goose::goose::{optimize_traced, step, Branch, GooseParams, SwarmState, TraceLevel};
use goose::rng::SeededSource;
use goose::{Bounds, Problem};
use proptest::prelude::*;

const IDS: [&str; 8] = ["F1", "F5", "F8", "F9", "F12", "F15", "F17", "F19"];

fn sphere(dim: usize, lo: f64, width: f64) -> Problem {
    Problem::new("sphere", Bounds::uniform(dim, lo, lo + width).unwrap(), |x: &[f64]| {
        x.iter().map(|v| v * v).sum::<f64>()
    })
}

fn any_problem() -> impl Strategy<Value = Problem> {
    prop_oneof![
        (0..IDS.len()).prop_map(|i| make_problem(IDS[i]).unwrap()),
        (1usize..6, -100.0..0.0f64, 0.01..150.0f64).prop_map(|(d, lo, w)| sphere(d, lo, w)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn agents_stay_in_bounds_and_best_never_worsens(
        problem in any_problem(),
        agents in 1usize..8,
        iters in 1usize..12,
        seed in any::<u64>(),
    ) {
        let params = GooseParams::with_budget(agents, iters);
        let mut rng = SeededSource::new(seed);
        let mut state = SwarmState::initialize(&problem, &params, &mut rng).unwrap();
        let mut best = state.best_fitness;
        let mut m_t = state.m_t;
        for _ in 0..iters {
            let report = step(&mut state, &problem, &params, &mut rng).unwrap();
            prop_assert_eq!(report.counts.total(), agents);
            for x in &state.positions {
                prop_assert!(problem.bounds.contains(x));
            }
            prop_assert!(state.best_fitness <= best);
            prop_assert!(state.m_t <= m_t);
            if report.branches.contains(&Branch::Explore) {
                prop_assert!(state.m_t.is_finite());
            }
            let min_now = state.fitness.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert!(state.best_fitness <= min_now);
            best = state.best_fitness;
            m_t = state.m_t;
        }
    }

    #[test]
    fn runs_are_deterministic_per_seed(
        problem in any_problem(),
        agents in 1usize..6,
        iters in 1usize..10,
        seed in any::<u64>(),
    ) {
        let params = GooseParams::with_budget(agents, iters);
        let a = optimize_traced(&problem, &params, seed, TraceLevel::FullHistory).unwrap();
        let b = optimize_traced(&problem, &params, seed, TraceLevel::FullHistory).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.branch_counts.total(), agents * iters);
        prop_assert_eq!(a.evaluations, (agents * (iters + 1)) as u64);
        let curve = &a.trace.best_fitness_per_iter;
        prop_assert_eq!(curve.len(), iters);
        prop_assert!(curve.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*curve.last().unwrap(), a.best_fitness);
        prop_assert_eq!(a.trace.trajectory.as_ref().map(Vec::len), Some(iters));
    }
}

#[test]
fn trace_levels_control_recorded_series() {
    let problem = make_problem("F17").unwrap();
    let params = GooseParams::with_budget(5, 7);
    let best = optimize_traced(&problem, &params, 3, TraceLevel::BestOnly).unwrap();
    assert!(best.trace.mean_fitness_per_iter.is_none());
    assert!(best.trace.trajectory.is_none());
    let mean = optimize_traced(&problem, &params, 3, TraceLevel::BestAndMean).unwrap();
    assert_eq!(mean.trace.mean_fitness_per_iter.as_ref().unwrap().len(), 7);
    assert!(mean.trace.trajectory.is_none());
    let full = optimize_traced(&problem, &params, 3, TraceLevel::FullHistory).unwrap();
    assert_eq!(full.trace.search_history.as_ref().unwrap().len(), 7);
    // The level never changes the search itself.
    assert_eq!(best.best_x, full.best_x);
}

#[test]
fn history_is_capped_for_large_swarms() {
    let problem = make_problem("F1").unwrap();
    let full = optimize_traced(&problem, &GooseParams::with_budget(4, 3), 1, TraceLevel::FullHistory).unwrap();
    assert!(full.trace.search_history.is_none());
    assert_eq!(full.trace.trajectory.unwrap().len(), 3);
}
