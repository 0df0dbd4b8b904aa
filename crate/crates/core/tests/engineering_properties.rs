use goose::engineering::{
    economic_load_dispatch, igg_fraction, penalize, pressure_vessel, snap_thicknesses, welded_beam,
    EldConfig, EngineeringId, IggConfig, WeldedBeamConfig, DEFAULT_PENALTY,
};
use goose::engineering::pressure_vessel::PLATE_GAUGE;
use proptest::prelude::*;

fn in_box(lower: &[f64], upper: &[f64], fractions: &[f64]) -> Vec<f64> {
    lower.iter().zip(upper).zip(fractions).map(|((lo, hi), f)| lo + (hi - lo) * f).collect()
}

proptest! {
    #[test]
    fn penalty_is_exact_on_feasible_points_and_never_below_raw(
        idx in 0usize..4,
        fractions in prop::collection::vec(0.0..1.0f64, 4),
    ) {
        let cp = EngineeringId::ALL[idx].build();
        let x = in_box(cp.bounds.lower(), cp.bounds.upper(), &fractions[..cp.dim()]);
        let p = penalize(&cp);
        let penalized = p.evaluate(&x, None).unwrap();
        let raw = cp.objective(&x);
        if cp.constraint_values(&x).iter().all(|&g| g <= 0.0) {
            prop_assert_eq!(penalized, raw);
        } else {
            prop_assert!(penalized > raw);
        }
        let violation: f64 = cp.constraint_values(&x).iter().map(|g| g.max(0.0).powi(2)).sum();
        prop_assert!((penalized - raw - DEFAULT_PENALTY * violation).abs() <= 1e-9 * penalized.abs().max(1.0));
        prop_assert_eq!(p.violation(&x), Some(cp.max_violation(&x)));
    }

    #[test]
    fn snapped_thicknesses_are_gauge_multiples(fractions in prop::collection::vec(0.0..1.0f64, 4)) {
        let cp = pressure_vessel();
        let x = in_box(cp.bounds.lower(), cp.bounds.upper(), &fractions);
        let out = snap_thicknesses(&cp, &x);
        for ((&snapped, &raw), &upper) in out.design.iter().zip(&x).zip(cp.bounds.upper()).take(2) {
            let steps = snapped / PLATE_GAUGE;
            prop_assert_eq!(steps, steps.round());
            prop_assert!(snapped >= raw - 1e-12 || snapped == upper);
        }
        prop_assert_eq!(&out.design[2..], &x[2..]);
        prop_assert_eq!(out.feasible, out.max_violation <= 1e-6);
    }

    #[test]
    fn dispatch_on_balance_plane_is_feasible(f1 in 0.0..1.0f64, f2 in 0.0..1.0f64) {
        let cfg = EldConfig::default();
        let cp = economic_load_dispatch(&cfg).unwrap();
        let p1 = 10.0 + 75.0 * f1;
        let p2 = 10.0 + 70.0 * f2;
        let p3 = 150.0 - p1 - p2;
        let x = [p1, p2, p3];
        prop_assert!(cp.is_feasible(&x));
        prop_assert_eq!(cfg.within_limits(&x), (10.0..=70.0).contains(&p3));
    }
}

#[test]
fn engineering_problems_report_violation_even_without_constraints() {
    let p = penalize(&igg_fraction(&IggConfig::default()).unwrap());
    assert_eq!(p.violation(&[0.0]), Some(0.0));
    assert!(p.flags.contains(&"assumed_formulation".to_string()));
}

#[test]
fn welded_beam_infeasible_corner_is_penalized() {
    let cp = welded_beam(&WeldedBeamConfig::default());
    let x = [0.1, 0.1, 0.1, 0.1];
    assert!(!cp.is_feasible(&x));
    assert!(penalize(&cp).evaluate(&x, None).unwrap() > 1e6);
}
