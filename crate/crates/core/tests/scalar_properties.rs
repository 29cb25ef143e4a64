use fracpow_core::plan::{balanced_count, plan_equalized};
use fracpow_core::scalar::{
    g1, g2, lambda_n_exact, lambda_n_tilde, ln_lambda_n_exact, pointwise_estimate, stationarity_lhs,
};
use fracpow_core::{
    build_rational, estimate_operator_error, plan_full, select_n, Branch, FractionalExponent,
};
use proptest::prelude::*;

fn alpha(a: f64) -> FractionalExponent {
    FractionalExponent::new(a).unwrap()
}

#[test]
fn scalar_error_within_three_estimates_at_ten() {
    for a in [0.25, 0.5, 0.75] {
        for n in 5..=40 {
            let form = build_rational(alpha(a), &plan_full(n).unwrap()).unwrap();
            let err = (10f64.powf(-a) - form.eval(10.0)).abs();
            let est = 4.0 * (a * std::f64::consts::PI).sin()
                * (g1(n, alpha(a), 10.0).unwrap() + g2(n, alpha(a), 10.0).unwrap());
            assert!(err <= 3.0 * est, "a={a} n={n}");
        }
    }
}

#[test]
fn scalar_error_grid_below_operator_estimate() {
    for a in [0.2, 0.5, 0.8] {
        for n in [10, 20, 40] {
            let form = build_rational(alpha(a), &plan_full(n).unwrap()).unwrap();
            let est = estimate_operator_error(n, alpha(a)).unwrap().value;
            for i in 0..50 {
                let lambda = 10f64.powf(16.0 * i as f64 / 49.0);
                let err = (lambda.powf(-a) - form.eval(lambda)).abs();
                assert!(err <= 2.0 * est, "a={a} n={n} lambda={lambda}");
            }
        }
    }
}

#[test]
fn stationarity_root_residual() {
    for a in [0.1, 0.25, 0.5, 0.75, 0.9] {
        for n in [2, 10, 50, 200] {
            let nbar = (4 * n + 2) as f64;
            let u = ln_lambda_n_exact(n, alpha(a)).unwrap();
            assert!((stationarity_lhs(u) - 2.0 * a / nbar).abs() <= 1e-10);
            if n >= 10 {
                let approx = lambda_n_tilde(n, alpha(a)).unwrap().ln();
                assert!((approx - u).abs() / u <= 0.15, "a={a} n={n}");
            }
        }
    }
}

#[test]
fn select_n_is_minimal() {
    for a in [0.1, 0.5, 0.9] {
        for tol in [1e-2, 1e-4, 1e-6] {
            let n = select_n(alpha(a), tol).unwrap();
            assert!(estimate_operator_error(n, alpha(a)).unwrap().value <= tol);
            if n > 1 {
                assert!(estimate_operator_error(n - 1, alpha(a)).unwrap().value > tol);
            }
        }
    }
}

#[test]
fn equalized_saves_inversions_when_first_family_governs() {
    let a = alpha(0.25);
    for n in [40, 60, 100] {
        let p = plan_equalized(n, a).unwrap();
        assert!(p.predicted_inversions() < 2 * balanced_count(n, a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn estimate_positive_and_branch_consistent(n in 1usize..400, a in 0.02f64..0.98) {
        let e = estimate_operator_error(n, alpha(a)).unwrap();
        prop_assert!(e.value > 0.0 && e.value.is_finite());
        if a <= 0.5 || n as f64 > e.n_star {
            prop_assert_eq!(e.branch, Branch::G1AtLambdaN);
        }
    }

    #[test]
    fn lambda_n_is_maximizer(n in 3usize..150, a in 0.1f64..0.9) {
        if let Ok(ln_) = lambda_n_exact(n, alpha(a)) {
            let peak = g1(n, alpha(a), ln_).unwrap();
            for f in [0.5, 0.9, 1.1, 2.0] {
                let other = (ln_ * f).max(1.0);
                prop_assert!(g1(n, alpha(a), other).unwrap() <= peak * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn pointwise_estimate_decreases_in_n(n in 2usize..200, a in 0.05f64..0.95, l in 0.0f64..16.0) {
        let lambda = 10f64.powf(l);
        let e0 = pointwise_estimate(n, alpha(a), lambda).unwrap();
        let e1 = pointwise_estimate(n + 1, alpha(a), lambda).unwrap();
        prop_assert!(e1 < e0);
    }

    #[test]
    fn rational_form_positive_and_bounded(n in 1usize..80, a in 0.05f64..0.95, l in 0.0f64..16.0) {
        let form = build_rational(alpha(a), &plan_full(n).unwrap()).unwrap();
        let v = form.eval(10f64.powf(l));
        let est = estimate_operator_error(n, alpha(a)).unwrap().value;
        prop_assert!(v > 0.0 && v <= 1.0 + est);
    }
}
