//! CSV reports. Every table has a header row; numbers use the shortest
//! round-trip representation so reruns are byte-identical.

use std::fmt::Write as _;

use fracpow_core::linalg::symmetric_spectral_norm;
use fracpow_core::operator::{exact_fractional_inverse, norm_error, postfactor};
use fracpow_core::oracle::{oracle_diag_norm_error, oracle_scalar_power, sinc_baseline_error};
use fracpow_core::plan::{first_family_dominates, plan};
use fracpow_core::scalar::{balanced_estimate, initial_balanced_estimate, pointwise_estimate};
use fracpow_core::{
    build_rational, estimate_operator_error, gauss_laguerre, plan_full, select_n, Error,
    FractionalExponent, Operator, TruncationPlan, Variant, MAX_ORDER,
};

use crate::io::format_value as v;
use crate::parallel::materialize;

type Result<T> = fracpow_core::Result<T>;

/// `j,theta,weight`, `j` counted from 1.
pub fn nodes_csv(n: usize) -> Result<String> {
    let rule = gauss_laguerre(n)?;
    let mut out = String::from("j,theta,weight\n");
    for (j, (x, w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let _ = writeln!(out, "{},{},{}", j + 1, v(*x), v(*w));
    }
    Ok(out)
}

/// `n,alpha,estimate,branch,n_star,ln_lambda_n`.
pub fn estimate_csv(alpha: FractionalExponent, n: usize) -> Result<String> {
    let e = estimate_operator_error(n, alpha)?;
    Ok(format!(
        "n,alpha,estimate,branch,n_star,ln_lambda_n\n{},{},{},{},{},{}\n",
        e.n,
        v(e.alpha),
        v(e.value),
        e.branch,
        v(e.n_star),
        v(e.ln_lambda_n)
    ))
}

/// `alpha,tol,n,estimate`.
pub fn select_n_csv(alpha: FractionalExponent, tol: f64) -> Result<String> {
    let n = select_n(alpha, tol)?;
    let e = estimate_operator_error(n, alpha)?;
    Ok(format!("alpha,tol,n,estimate\n{},{},{},{}\n", v(alpha.get()), v(tol), n, v(e.value)))
}

/// `n,error,estimate` for `n = 2..=nmax`, with the pointwise estimate
/// `4 sin(απ)(g1 + g2)` at `λ`.
pub fn scalar_error_csv(alpha: FractionalExponent, lambda: f64, nmax: usize) -> Result<String> {
    let exact = oracle_scalar_power(lambda, alpha)?;
    check_nmax(nmax)?;
    let mut out = String::from("n,error,estimate\n");
    for n in 2..=nmax {
        let form = build_rational(alpha, &plan_full(n)?)?;
        let err = (exact - form.eval(lambda)).abs();
        let _ = writeln!(out, "{n},{},{}", v(err), v(pointwise_estimate(n, alpha, lambda)?));
    }
    Ok(out)
}

fn check_nmax(nmax: usize) -> Result<()> {
    if (2..=MAX_ORDER).contains(&nmax) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { order: nmax, max: MAX_ORDER })
    }
}

/// Estimate of the uniform error on `[1, ∞)` for the rule described by `plan`.
///
/// Full: `4 sin(απ) S(n, α)`. Balanced: the `3.6` formula at `k₁`. Equalized:
/// the `3.6` formula at `k₁` when the first family governs, else the `2.96`
/// formula at `k₂`.
pub fn plan_estimate(alpha: FractionalExponent, n: usize, p: &TruncationPlan) -> Result<f64> {
    Ok(match p.variant() {
        Variant::Full => estimate_operator_error(n, alpha)?.value,
        Variant::Balanced => balanced_estimate(p.first().1, alpha),
        Variant::Equalized if first_family_dominates(n, alpha) => balanced_estimate(p.first().1, alpha),
        Variant::Equalized => initial_balanced_estimate(p.second().1, alpha),
    })
}

/// `n,inversions,error,estimate` for `n = 2..=nmax`.
///
/// The error is `‖L^{-α} − R(L)‖₂`: exact over the eigenvalues for diagonal
/// operators, otherwise against a dense eigendecomposition. The estimate is
/// scaled by `λ_min^{-α}`.
pub fn matrix_error_csv<O: Operator + Sync>(
    op: &O,
    alpha: FractionalExponent,
    nmax: usize,
    variant: Variant,
    parallel: bool,
) -> Result<String> {
    check_nmax(nmax)?;
    let post = postfactor(op.lambda_min(), alpha);
    let exact = if op.diagonal().is_none() { Some(exact_fractional_inverse(op, alpha)?) } else { None };
    let mut out = String::from("n,inversions,error,estimate\n");
    for n in 2..=nmax {
        let p = plan(variant, n, alpha)?;
        let form = build_rational(alpha, &p)?;
        let err = match &exact {
            None => norm_error(op, &form)?,
            Some(e) => symmetric_spectral_norm(&e.sub(&materialize(op, &form, parallel)?).symmetrized())?,
        };
        let est = post * plan_estimate(alpha, n, &p)?;
        let _ = writeln!(out, "{n},{},{},{}", p.predicted_inversions(), v(err), v(est));
    }
    Ok(out)
}

/// Largest-order plan of `variant` whose inversion count fits in `budget`.
pub fn plan_within(variant: Variant, alpha: FractionalExponent, budget: usize, nmax: usize) -> Result<Option<(usize, TruncationPlan)>> {
    let mut best = None;
    for n in 1..=nmax.min(MAX_ORDER) {
        let p = plan(variant, n, alpha)?;
        if p.predicted_inversions() <= budget {
            best = Some((n, p));
        }
    }
    Ok(best)
}

/// `method,solves,error` for the balanced and equalized rules and the Sinc
/// baseline at each solve budget. For the Gauss-Laguerre rules `solves` is the
/// count actually used by the largest plan within the budget.
pub fn compare_csv(
    alpha: FractionalExponent,
    spectrum: &[f64],
    budgets: &[usize],
    nmax: usize,
) -> Result<String> {
    if spectrum.is_empty() {
        return Err(Error::InvalidOperator("empty spectrum"));
    }
    let lmin = spectrum.iter().copied().fold(f64::INFINITY, f64::min);
    if lmin.is_nan() || lmin <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    let post = postfactor(lmin, alpha);
    let scaled: Vec<f64> = spectrum.iter().map(|l| l / lmin).collect();
    let mut out = String::from("method,solves,error\n");
    for &m in budgets {
        for variant in [Variant::Balanced, Variant::Equalized] {
            if let Some((_, p)) = plan_within(variant, alpha, m, nmax)? {
                let form = build_rational(alpha, &p)?;
                let err = post * oracle_diag_norm_error(&scaled, &form)?;
                let _ = writeln!(out, "{variant},{},{}", p.predicted_inversions(), v(err));
            }
        }
        let err = post * sinc_baseline_error(&scaled, alpha, m)?;
        let _ = writeln!(out, "sinc,{m},{}", v(err));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracpow_core::operator::Diagonal;

    fn alpha(a: f64) -> FractionalExponent {
        FractionalExponent::new(a).unwrap()
    }

    #[test]
    fn nodes_header_and_rows() {
        let csv = nodes_csv(3).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "j,theta,weight");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,"));
    }

    #[test]
    fn scalar_rows_bounded() {
        let csv = scalar_error_csv(alpha(0.5), 10.0, 40).unwrap();
        for line in csv.lines().skip(1) {
            let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert!(f[1] <= 3.0 * f[2], "{line}");
        }
        assert_eq!(csv.lines().count(), 40);
        assert!(scalar_error_csv(alpha(0.5), 0.5, 10).is_err());
    }

    #[test]
    fn matrix_rows() {
        let op = Diagonal::power(100, 8.0).unwrap();
        let csv = matrix_error_csv(&op, alpha(0.5), 12, Variant::Full, false).unwrap();
        let last = csv.lines().last().unwrap();
        assert!(last.starts_with("12,24,"));
    }

    #[test]
    fn plan_within_budget() {
        let (_, p) = plan_within(Variant::Balanced, alpha(0.5), 40, MAX_ORDER).unwrap().unwrap();
        assert!(p.predicted_inversions() <= 40 && p.predicted_inversions() >= 38);
        assert!(plan_within(Variant::Balanced, alpha(0.5), 1, 100).unwrap().is_none());
    }

    #[test]
    fn compare_contains_all_methods() {
        let spectrum: Vec<f64> = (1..=100).map(|j| (j as f64).powi(8)).collect();
        let csv = compare_csv(alpha(0.5), &spectrum, &[11, 21], 400).unwrap();
        for m in ["balanced,", "equalized,", "sinc,11,", "sinc,21,"] {
            assert!(csv.contains(m), "{m}");
        }
        assert!(compare_csv(alpha(0.5), &spectrum, &[10], 400).is_err());
    }
}
