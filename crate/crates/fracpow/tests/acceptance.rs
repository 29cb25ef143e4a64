use std::f64::consts::PI;
use std::process::Command;

use fracpow_core::operator::Diagonal;
use fracpow_core::oracle::{least_squares_slope, oracle_diag_norm_error, oracle_reconstruction};
use fracpow_core::plan::balanced_count;
use fracpow_core::scalar::{
    balanced_estimate, g1, g2, lambda_n_tilde, ln_lambda_n_exact, n_bar, stationarity_lhs,
};
use fracpow_core::{
    build_rational, estimate_operator_error, gauss_laguerre, plan_balanced, plan_equalized,
    plan_full, select_n, FractionalExponent,
};

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn alpha(a: f64) -> FractionalExponent {
    FractionalExponent::new(a).unwrap()
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn quadrature_correctness() -> Outcome {
    let mut worst_mass = 0.0f64;
    let mut worst_moment = 0.0f64;
    for n in [1usize, 2, 5, 10, 20, 50, 100] {
        let rule = gauss_laguerre(n).unwrap();
        worst_mass = worst_mass.max((rule.weights().iter().sum::<f64>() - 1.0).abs());
        for k in 0..=((2 * n - 1).min(15) as i32) {
            let exact = factorial(k as u32);
            worst_moment = worst_moment.max((rule.integrate(|x| x.powi(k)) - exact).abs() / exact);
        }
    }
    (
        worst_mass <= 1e-13 && worst_moment <= 1e-10,
        format!("max |sum w - 1| = {worst_mass:.2e} (tol 1e-13), max moment rel err = {worst_moment:.2e} (tol 1e-10)"),
    )
}

fn scalar_error(n: usize, a: f64, lambda: f64) -> f64 {
    let form = build_rational(alpha(a), &plan_full(n).unwrap()).unwrap();
    (lambda.powf(-a) - form.eval(lambda)).abs()
}

fn scalar_reproduction() -> Outcome {
    let lambda = 10.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [0.25, 0.5, 0.75] {
        let mut worst = 0.0f64;
        for n in 5..=40 {
            let est = 4.0 * (a * PI).sin()
                * (g1(n, alpha(a), lambda).unwrap() + g2(n, alpha(a), lambda).unwrap());
            worst = worst.max(scalar_error(n, a, lambda) / est);
        }
        let decay = scalar_error(5, a, lambda) / scalar_error(40, a, lambda);
        ok &= worst <= 3.0 && decay >= 1e4;
        parts.push(format!("a={a}: max err/est = {worst:.3} (<= 3), err5/err40 = {decay:.3e} (>= 1e4)"));
    }
    (ok, parts.join("; "))
}

fn operator_reproduction() -> Outcome {
    let op = Diagonal::power(100, 8.0).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [0.25, 0.5, 0.75] {
        let mut worst = 0.0f64;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for n in 5..=60 {
            let form = build_rational(alpha(a), &plan_full(n).unwrap()).unwrap();
            let err = oracle_diag_norm_error(op.values(), &form).unwrap();
            if n >= 10 {
                worst = worst.max(err / estimate_operator_error(n, alpha(a)).unwrap().value);
            }
            xs.push((n as f64).cbrt());
            ys.push(err.ln());
        }
        let slope = least_squares_slope(&xs, &ys);
        let target = -3.0 * (a * a * PI * PI).cbrt() * 4f64.cbrt();
        let rel = (slope - target).abs() / target.abs();
        let derived = -3.0 * (a * a * PI * PI).cbrt();
        ok &= worst <= 3.0 && rel <= 0.25;
        parts.push(format!(
            "a={a}: max err/S = {worst:.3} (<= 3), slope = {slope:.3} vs {target:.3} (rel {rel:.2}, tol 0.25; -3(a^2 pi^2)^(1/3) = {derived:.3})"
        ));
    }
    (ok, parts.join("; "))
}

fn balanced_truncation() -> Outcome {
    let a = alpha(0.5);
    let n = 60;
    let op = Diagonal::power(100, 8.0).unwrap();
    let k = (2.0 * 3f64.sqrt() * (0.5 * (n * n) as f64 / (PI * PI)).cbrt()).floor() as usize;
    let plan = plan_balanced(n, a).unwrap();
    let inversions = plan.predicted_inversions();
    let full = build_rational(a, &plan_full(n).unwrap()).unwrap();
    let bal = build_rational(a, &plan).unwrap();
    let err_full = oracle_diag_norm_error(op.values(), &full).unwrap();
    let err_bal = oracle_diag_norm_error(op.values(), &bal).unwrap();
    let rule = gauss_laguerre(n).unwrap();
    let tail = (a.first_prefactor() + a.second_prefactor()) * rule.tail_weight_sum(k).unwrap();
    let est = balanced_estimate(k, a);
    let ok = inversions == 2 * k
        && inversions <= 40
        && err_bal <= 2.0 * err_full + tail
        && err_bal <= 3.0 * est;
    (
        ok,
        format!(
            "k={k}, inversions={inversions} (== 2k, <= 40, full uses {}), err_bal={err_bal:.3e}, 2*err_full+tail={:.3e}, 3*est_bal={:.3e}",
            2 * n,
            2.0 * err_full + tail,
            3.0 * est
        ),
    )
}

fn equalized_rule() -> Outcome {
    let n = 60;
    let op = Diagonal::power(100, 8.0).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for a_ in [0.25, 0.75] {
        let a = alpha(a_);
        let kb = balanced_count(n, a);
        let plan = plan_equalized(n, a).unwrap();
        let (n1, k1) = plan.first();
        let (n2, k2) = plan.second();
        let inv = plan.predicted_inversions();
        let err = oracle_diag_norm_error(op.values(), &build_rational(a, &plan).unwrap()).unwrap();
        let est = balanced_estimate(kb, a);
        let paired = 3.09 * a_.powf(-0.75) * (1.0 - a_).powf(-0.5) * (k1 as f64).powf(0.75);
        let gap = (k2 as f64 - paired.round()).abs();
        let derived = 1.447 * a_.powf(0.75) * (1.0 - a_).powf(-0.5) * (k1 as f64).powf(0.75);
        ok &= inv < 2 * kb && err <= 3.0 * est && gap <= 2.0;
        parts.push(format!(
            "a={a_}: (n1,k1,n2,k2)=({n1},{k1},{n2},{k2}), k1+k2={inv} vs 2k={} (<), err/est_bal={:.3} (<= 3), k2={k2} vs 3.09 a^-3/4 (1-a)^-1/2 k1^3/4 = {paired:.2} (+-2; 1.447 a^3/4 (1-a)^-1/2 k1^3/4 = {derived:.2})",
            2 * kb,
            err / est
        ));
    }
    (ok, parts.join("; "))
}

fn cross_oracle() -> Outcome {
    let mut worst_identity = 0.0f64;
    let mut worst_ratio = 0.0f64;
    let mut where_ = String::new();
    for a in [0.2, 0.4, 0.6, 0.8] {
        let form = build_rational(alpha(a), &plan_full(128).unwrap()).unwrap();
        let est = estimate_operator_error(128, alpha(a)).unwrap().value;
        for lambda in [1.0, 10.0, 1e3, 1e6, 1e12] {
            let oracle = oracle_reconstruction(lambda, alpha(a)).unwrap();
            worst_identity = worst_identity.max((oracle - lambda.powf(-a)).abs());
            let ratio = (form.eval(lambda) - oracle).abs() / est;
            if ratio > worst_ratio {
                worst_ratio = ratio;
                where_ = format!("a={a}, lambda={lambda:e}");
            }
        }
    }
    (
        worst_identity <= 1e-10 && worst_ratio <= 1.0,
        format!(
            "max identity residual = {worst_identity:.2e} (tol 1e-10), max |R128 - oracle|/est128 = {worst_ratio:.4} (<= 1) at {where_}"
        ),
    )
}

fn lambda_n_machinery() -> Outcome {
    let mut worst_res = 0.0f64;
    let mut worst_rel = 0.0f64;
    for a in [0.25, 0.5, 0.75] {
        for n in 10..=120 {
            let u = ln_lambda_n_exact(n, alpha(a)).unwrap();
            worst_res = worst_res.max((stationarity_lhs(u) - 2.0 * a / n_bar(n)).abs());
            let ut = lambda_n_tilde(n, alpha(a)).unwrap().ln();
            worst_rel = worst_rel.max((u - ut).abs() / u);
        }
    }
    (
        worst_res <= 1e-10 && worst_rel <= 0.15,
        format!("max residual = {worst_res:.2e} (tol 1e-10), max |ln l_n - ln l~_n|/ln l_n = {worst_rel:.4} (tol 0.15)"),
    )
}

fn laguerre_asymptotics() -> Outcome {
    let n = 100;
    let rule = gauss_laguerre(n).unwrap();
    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut lo = f64::INFINITY;
    for k in 20..=60 {
        let ratio = rule.nodes()[k - 1] / ((k * k) as f64 * PI * PI / (4.0 * n as f64));
        let upper = (1.0 + 1.0 / k as f64).powi(2) * 1.05;
        lo = lo.min(ratio);
        if ratio <= 1.0 {
            below.push(k);
        }
        if ratio > upper {
            above.push(k);
        }
    }
    (
        below.is_empty() && above.is_empty(),
        format!("min ratio = {lo:.4}; k with ratio <= 1: {below:?}; k above upper bound: {above:?}"),
    )
}

fn select_n_sandwich() -> Outcome {
    let mut failures = Vec::new();
    let mut largest = 0;
    for i in 1..=9 {
        let a = alpha(i as f64 / 10.0);
        for tol in [1e-2, 1e-4, 1e-6] {
            match select_n(a, tol) {
                Ok(n) => {
                    largest = largest.max(n);
                    let at = estimate_operator_error(n, a).unwrap().value;
                    let before = if n > 1 { estimate_operator_error(n - 1, a).unwrap().value } else { f64::INFINITY };
                    if !(at <= tol && before > tol) {
                        failures.push(format!("a={} tol={tol:e}", a.get()));
                    }
                }
                Err(e) => failures.push(format!("a={} tol={tol:e}: {e}", a.get())),
            }
        }
    }
    (failures.is_empty(), format!("27 cases, largest n = {largest}, failures: {failures:?}"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fracpow"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(out.stdout)
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    }
}

fn determinism() -> Outcome {
    let configs: [&[&str]; 4] = [
        &["scalar-error", "--alpha", "0.5", "--lambda", "10", "--nmax", "40"],
        &["matrix-error", "--op", "diagpow:100:8", "--alpha", "0.25", "--nmax", "30", "--variant", "equalized"],
        &["matrix-error", "--op", "fd1d:24", "--alpha", "0.5", "--nmax", "20", "--variant", "balanced"],
        &["compare", "--alpha", "0.5", "--solves-list", "11,21,41,81"],
    ];
    let mut mismatches = Vec::new();
    for args in configs {
        let first = run_cli(args);
        let second = run_cli(args);
        let mut par = args.to_vec();
        if args[0] == "matrix-error" {
            par.push("--parallel");
        }
        let third = run_cli(&par);
        match (first, second, third) {
            (Ok(a), Ok(b), Ok(c)) if !a.is_empty() && a == b && b == c => {}
            _ => mismatches.push(args[0].to_string() + " " + args[2]),
        }
    }
    let apply = ["apply", "--op", "fd2d:10", "--alpha", "0.3", "--variant", "equalized", "--n", "80", "--seed", "3"];
    let a = run_cli(&apply);
    let mut par = apply.to_vec();
    par.push("--parallel");
    let b = run_cli(&par);
    if !(a.is_ok() && a == b) {
        mismatches.push("apply fd2d:10".into());
    }
    (mismatches.is_empty(), format!("5 configs, serial x2 and --parallel; mismatches: {mismatches:?}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 quadrature correctness", quadrature_correctness),
        ("2 scalar error vs estimate at lambda=10", scalar_reproduction),
        ("3 operator error vs estimate on diag(1..100)^8", operator_reproduction),
        ("4 balanced truncation", balanced_truncation),
        ("5 equalized rule", equalized_rule),
        ("6 cross-oracle consistency", cross_oracle),
        ("7 lambda_n machinery", lambda_n_machinery),
        ("8 Laguerre root asymptotics", laguerre_asymptotics),
        ("9 select_n sandwich", select_n_sandwich),
        ("10 CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let (ok, detail) = check();
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
