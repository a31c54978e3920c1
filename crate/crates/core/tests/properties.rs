//! Property tests for spaces, paired orbits, generators and the solver.

use pa_fixpoint::mapping::{delta_trace, orbit, MergeIndex};
use pa_fixpoint::solver::{picard_solve, IterationConfig, StopRule};
use pa_fixpoint::{make_space, minimal_coefficient, validate_b_metric, FiniteBSpace, GeneratorSpec, SelfMap};
use proptest::prelude::*;

fn metric_space(max_n: usize) -> impl Strategy<Value = FiniteBSpace> {
    (1..=max_n, any::<u64>(), 0.0f64..5.0)
        .prop_map(|(n, seed, spread)| make_space(&GeneratorSpec::random_perturbed(n, spread, 1.0, seed)).unwrap())
}

fn space_and_map(max_n: usize) -> impl Strategy<Value = (FiniteBSpace, SelfMap)> {
    (1..=max_n, any::<u64>(), 1.0f64..3.0).prop_flat_map(|(n, seed, p)| {
        let space = make_space(&GeneratorSpec::random_perturbed(n, 2.0, p, seed)).unwrap();
        prop::collection::vec(0..n, n).prop_map(move |t| (space.clone(), SelfMap::new(t).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn metric_powers_are_b_metrics(space in metric_space(7), p in 1.0f64..4.0) {
        prop_assert!(validate_b_metric(space.matrix(), 1.0).unwrap().valid);
        let powered: Vec<Vec<f64>> =
            space.matrix().iter().map(|r| r.iter().map(|d| d.powf(p)).collect()).collect();
        let s = 2f64.powf(p - 1.0);
        let report = validate_b_metric(&powered, s).unwrap();
        prop_assert!(report.valid, "{:?}", report.violations.first());
        prop_assert!(minimal_coefficient(&powered).unwrap() <= s * (1.0 + 1e-12));
    }

    #[test]
    fn minimal_coefficient_is_tight(space in metric_space(6), p in 1.0f64..4.0) {
        let powered: Vec<Vec<f64>> =
            space.matrix().iter().map(|r| r.iter().map(|d| d.powf(p)).collect()).collect();
        let s = minimal_coefficient(&powered).unwrap();
        prop_assert!(s >= 1.0);
        prop_assert!(validate_b_metric(&powered, s).unwrap().valid);
        let below = s * (1.0 - 1e-9);
        if below >= 1.0 {
            prop_assert!(!validate_b_metric(&powered, below).unwrap().valid);
        }
    }

    #[test]
    fn validation_is_deterministic(space in metric_space(5), s in 1.0f64..2.0) {
        let squared: Vec<Vec<f64>> = space.matrix().iter().map(|r| r.iter().map(|d| d * d).collect()).collect();
        prop_assert_eq!(validate_b_metric(&squared, s).unwrap(), validate_b_metric(&squared, s).unwrap());
    }

    #[test]
    fn delta_shift_property((space, map) in space_and_map(6), i in 0usize..6, j in 0usize..6) {
        let n = space.len();
        let (i, j) = (i % n, j % n);
        let t = delta_trace(&space, &map, i, j).unwrap();
        let shifted = delta_trace(&space, &map, map.apply(i), map.apply(j)).unwrap();
        for k in 0..2 * t.horizon() + 2 {
            prop_assert_eq!(t.delta(k + 1), shifted.delta(k));
        }
    }

    #[test]
    fn pair_with_image_gives_successive_distances((space, map) in space_and_map(6), x in 0usize..6) {
        let x = x % space.len();
        let t = delta_trace(&space, &map, x, map.apply(x)).unwrap();
        for k in 0..2 * t.horizon() + 2 {
            let a_k = space.d(map.iterate(x, k), map.iterate(x, k + 1));
            prop_assert_eq!(t.delta(k), a_k);
        }
    }

    #[test]
    fn paired_orbit_structure((space, map) in space_and_map(6), i in 0usize..6, j in 0usize..6) {
        let n = space.len();
        let (i, j) = (i % n, j % n);
        let t = delta_trace(&space, &map, i, j).unwrap();
        prop_assert!(t.horizon() <= n * n);
        prop_assert_eq!(t.pre_period + t.period, t.horizon());
        if i != j {
            prop_assert!(t.deltas[0] > 0.0);
        }
        if let MergeIndex::At(m) = t.merge_index {
            for k in 0..t.horizon() + 3 {
                prop_assert_eq!(t.delta(k) == 0.0, k >= m, "k = {}, m = {}", k, m);
            }
        }
        prop_assert_eq!(t.prefix_sums.len(), t.horizon() + 1);
    }

    #[test]
    fn orbit_is_minimal((_space, map) in space_and_map(6), start in 0usize..6) {
        let start = start % map.len();
        let o = orbit(&map, start).unwrap();
        let len = o.pre_period + o.period;
        prop_assert_eq!(o.path.len(), len);
        prop_assert_eq!(map.iterate(start, len), map.iterate(start, o.pre_period));
        let mut seen = o.path.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), len);
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..8, seed in any::<u64>(), spread in 0.0f64..3.0, p in 1.0f64..3.0) {
        let spec = GeneratorSpec::random_perturbed(n, spread, p, seed);
        let a = make_space(&spec).unwrap();
        let b = make_space(&spec).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(validate_b_metric(a.matrix(), a.s()).unwrap().valid);
    }

    #[test]
    fn certified_bound_is_geometric(alpha in 0.01f64..0.49, c in 0.01f64..0.99, x0 in -100.0f64..100.0) {
        // |cx - cy|^2 = c^2 |x - y|^2, so alpha >= c^2 is an honest factor
        let s = 2.0;
        let alpha = alpha.max(c * c);
        prop_assume!(s * alpha < 1.0);
        let cfg = IterationConfig::new(alpha, s).with_tolerance(1e-9);
        let r = picard_solve(|x: &f64| c * x, |x: &f64, y: &f64| (x - y) * (x - y), x0, &cfg).unwrap();
        let cert = &r.certificate;
        prop_assert!(cert.certified);
        for n in 0..r.iterations {
            let (a, b) = (cert.fixed_point_bound_at(n), cert.fixed_point_bound_at(n + 1));
            prop_assert!(b < a || a == 0.0);
            prop_assert!((b - alpha * a).abs() <= 1e-15 * a);
        }
    }
}

#[test]
fn certificate_ratio_is_exact_for_dyadic_alpha() {
    let cfg = IterationConfig::new(0.25, 2.0);
    let r = picard_solve(|x: &f64| x / 2.0, |x: &f64, y: &f64| (x - y) * (x - y), 1.0, &cfg).unwrap();
    let cert = &r.certificate;
    for n in 0..40 {
        assert_eq!(cert.fixed_point_bound_at(n + 1), 0.25 * cert.fixed_point_bound_at(n));
        assert_eq!(cert.fixed_point_bound_at(n), cert.s * cert.cauchy_bound_at(n));
    }
}

#[test]
fn true_error_stays_under_certified_bound() {
    let cfg = IterationConfig::new(0.25, 2.0).with_tolerance(1e-12);
    let mut x = 1.0f64;
    let r = picard_solve(|x: &f64| x / 2.0, |x: &f64, y: &f64| (x - y) * (x - y), x, &cfg).unwrap();
    for n in 0..=r.iterations {
        assert!(x * x <= r.certificate.fixed_point_bound_at(n), "n = {n}");
        x /= 2.0;
    }
}

#[test]
fn distinct_starts_land_together() {
    let s = 2.0;
    let tol = 1e-10;
    let cfg = IterationConfig::new(0.25, s).with_tolerance(tol);
    let sq = |x: &f64, y: &f64| (x - y) * (x - y);
    let ends: Vec<f64> = (0..10)
        .map(|i| -50.0 + 11.0 * i as f64)
        .map(|x0| picard_solve(|x: &f64| x / 2.0 + 1.0, sq, x0, &cfg).unwrap().point)
        .collect();
    for a in &ends {
        for b in &ends {
            assert!(sq(a, b) <= 2.0 * tol * s, "{a} vs {b}");
        }
    }
}

#[test]
fn residual_and_both_rules() {
    let sq = |x: &f64, y: &f64| (x - y) * (x - y);
    let base = IterationConfig::new(0.25, 2.0).with_tolerance(1e-12);
    let res = picard_solve(|x: &f64| x / 2.0, sq, 1.0, &base.with_stop_rule(StopRule::Residual)).unwrap();
    let both = picard_solve(|x: &f64| x / 2.0, sq, 1.0, &base.with_stop_rule(StopRule::Both)).unwrap();
    let bound = picard_solve(|x: &f64| x / 2.0, sq, 1.0, &base).unwrap();
    assert!(*res.residual_trace.last().unwrap() <= 1e-12);
    assert!(res.iterations <= bound.iterations);
    assert_eq!(both.iterations, res.iterations.max(bound.iterations));
}
