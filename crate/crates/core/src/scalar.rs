//! Scalar error model for the Gauss-Laguerre rational approximation of `λ^{-α}`.
//!
//! With `n̄ = 4n + 2` the two integral families contribute
//!
//! ```text
//! g1(λ) = λ^{-α} exp(-γ⁻(λ) √(2α n̄))
//! g2(λ) = λ^{-α} exp(-γ⁺(λ) √(2(1-α) n̄))
//! γ±(λ) = √(√(ln²λ + π²) ± ln λ)
//! ```
//!
//! and `|λ^{-α} - R(λ)| ≲ 4 sin(απ) (g1 + g2)`. Over `λ >= 1`, `g1` peaks at an
//! interior `λ_n` while `g2` is largest at `λ = 1`; the uniform (operator-norm)
//! estimate is built from those two maxima.

use crate::error::{Error, Result};
use crate::math::{cbrt, exp, fabs, ln, pow, sin, sqrt, PI};
use crate::quadrature::MAX_ORDER;

/// Constant `C` in the weight-tail bound `w_j <= C (θ_j - θ_{j-1}) e^{-θ_j}`.
pub const TAIL_CONSTANT: f64 = 1.0;

/// Exponent `α` of `λ^{-α}`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalExponent(f64);

impl FractionalExponent {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidExponent(alpha))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `sin(απ) / (απ)`, the weight of the first integral family.
    pub fn first_prefactor(self) -> f64 {
        sin(self.0 * PI) / (self.0 * PI)
    }

    /// `sin(απ) / ((1-α)π)`, the weight of the second integral family.
    pub fn second_prefactor(self) -> f64 {
        sin(self.0 * PI) / ((1.0 - self.0) * PI)
    }

    pub(crate) fn sin_pi(self) -> f64 {
        sin(self.0 * PI)
    }
}

impl TryFrom<f64> for FractionalExponent {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// `n̄ = 4n + 2`.
pub fn n_bar(n: usize) -> f64 {
    (4 * n + 2) as f64
}

fn check_lambda(lambda: f64) -> Result<f64> {
    if lambda >= 1.0 && lambda.is_finite() {
        Ok(ln(lambda))
    } else {
        Err(Error::Domain { what: "lambda (must be >= 1)", value: lambda })
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::OrderOutOfRange { order: 0, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// `(γ⁻, γ⁺)` as functions of `u = ln λ >= 0`.
///
/// `γ⁻` uses `√(r - u) = π / √(r + u)` to avoid cancellation for large `u`.
fn gamma_pm_ln(u: f64) -> (f64, f64) {
    let r = sqrt(u * u + PI * PI);
    let plus = sqrt(r + u);
    (PI / plus, plus)
}

/// Returns `(γ⁻(λ), γ⁺(λ))` for `λ >= 1`.
pub fn gamma_pm(lambda: f64) -> Result<(f64, f64)> {
    let u = check_lambda(lambda)?;
    Ok(gamma_pm_ln(u))
}

fn g1_ln(n: usize, alpha: FractionalExponent, u: f64) -> f64 {
    let a = alpha.get();
    let (minus, _) = gamma_pm_ln(u);
    exp(-a * u - minus * sqrt(2.0 * a * n_bar(n)))
}

fn g2_ln(n: usize, alpha: FractionalExponent, u: f64) -> f64 {
    let a = alpha.get();
    let (_, plus) = gamma_pm_ln(u);
    exp(-a * u - plus * sqrt(2.0 * (1.0 - a) * n_bar(n)))
}

/// Error factor of the first integral family.
pub fn g1(n: usize, alpha: FractionalExponent, lambda: f64) -> Result<f64> {
    check_order(n)?;
    Ok(g1_ln(n, alpha, check_lambda(lambda)?))
}

/// Error factor of the second integral family; decreasing in `λ`.
pub fn g2(n: usize, alpha: FractionalExponent, lambda: f64) -> Result<f64> {
    check_order(n)?;
    Ok(g2_ln(n, alpha, check_lambda(lambda)?))
}

/// Pointwise scalar estimate `4 sin(απ) (g1(λ) + g2(λ))`.
pub fn pointwise_estimate(n: usize, alpha: FractionalExponent, lambda: f64) -> Result<f64> {
    Ok(4.0 * alpha.sin_pi() * (g1(n, alpha, lambda)? + g2(n, alpha, lambda)?))
}

/// Left side of the stationarity condition for `g1`, in `u = ln λ`:
/// `(√(u² + π²) - u) / (u² + π²)`.
pub fn stationarity_lhs(u: f64) -> f64 {
    let r2 = u * u + PI * PI;
    // √(r²) - u = π² / (√(r²) + u)
    PI * PI / (r2 * (sqrt(r2) + u))
}

/// `ln λ_n`, where `λ_n > 1` maximises `g1` over `λ >= 1`.
///
/// Solves `stationarity_lhs(u) = 2α / n̄` by safeguarded Newton on a bracket
/// starting at `[0, 200]`, expanded if necessary.
pub fn ln_lambda_n_exact(n: usize, alpha: FractionalExponent) -> Result<f64> {
    check_order(n)?;
    let target = 2.0 * alpha.get() / n_bar(n);
    let f = |u: f64| stationarity_lhs(u) - target;

    if f(0.0) <= 0.0 {
        return Err(Error::NoInteriorMaximum);
    }
    let mut lo = 0.0;
    let mut hi = 200.0;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::RootNotBracketed);
        }
    }

    let mut u = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fu = f(u);
        if fu > 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let r2 = u * u + PI * PI;
        let deriv = -stationarity_lhs(u) * (2.0 * u + sqrt(r2)) / r2;
        let mut next = u - fu / deriv;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = fabs(next - u);
        u = next;
        if step <= 1e-12 * u.max(1.0) || hi - lo <= 1e-12 * u.max(1.0) {
            return Ok(u);
        }
    }
    Ok(u)
}

/// The maximiser `λ_n` of `g1` over `λ >= 1`. May overflow to infinity for very
/// small `α`; use [`ln_lambda_n_exact`] in that regime.
pub fn lambda_n_exact(n: usize, alpha: FractionalExponent) -> Result<f64> {
    ln_lambda_n_exact(n, alpha).map(exp)
}

/// Closed-form approximation `λ̃_n = exp(√((n̄π²/(4α))^{2/3} - π²))`.
pub fn lambda_n_tilde(n: usize, alpha: FractionalExponent) -> Result<f64> {
    check_order(n)?;
    let base = n_bar(n) * PI * PI / (4.0 * alpha.get());
    let radicand = cbrt(base * base) - PI * PI;
    if radicand < 0.0 {
        return Err(Error::OrderTooSmall { order: n });
    }
    Ok(exp(sqrt(radicand)))
}

/// Crossover order `n* ≈ 4.5 α⁴ / (1-α)³`: for `α > 1/2` and `n <= n*` the
/// second family dominates the uniform error.
pub fn n_star(alpha: FractionalExponent) -> f64 {
    let a = alpha.get();
    4.5 * pow(a, 4.0) / pow(1.0 - a, 3.0)
}

/// Which family's maximum sets the uniform estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `g1` at its maximiser `λ_n`.
    G1AtLambdaN,
    /// `g2` at `λ = 1`.
    G2AtOne,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::G1AtLambdaN => "g1_at_lambda_n",
            Branch::G2AtOne => "g2_at_one",
        }
    }
}

impl core::fmt::Display for Branch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Predicted uniform error `max_{λ>=1} |λ^{-α} - R_{2n-1,2n}(λ)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEstimate {
    pub n: usize,
    pub alpha: f64,
    pub value: f64,
    pub branch: Branch,
    pub n_star: f64,
    /// `ln λ_n`, or 0 when `g1` has no interior maximum.
    pub ln_lambda_n: f64,
    /// Factor `1 + C` picked up by truncated rules.
    pub truncation_inflation: f64,
}

/// `4 sin(απ) S(n, α)`.
///
/// `S = g1(λ_n)` when `α <= 1/2` or `n > n*`. Otherwise `S` is the larger of
/// `g2(1)` and `g1(λ_n)`; the `n*` rule only approximates where the two cross,
/// and taking the larger keeps the estimate monotone in `n`.
pub fn estimate_operator_error(n: usize, alpha: FractionalExponent) -> Result<ErrorEstimate> {
    check_order(n)?;
    let ln_lambda_n = match ln_lambda_n_exact(n, alpha) {
        Ok(u) => u,
        Err(Error::NoInteriorMaximum) => 0.0,
        Err(e) => return Err(e),
    };
    let first = g1_ln(n, alpha, ln_lambda_n);
    let ns = n_star(alpha);
    let (s, branch) = if alpha.get() <= 0.5 || n as f64 > ns {
        (first, Branch::G1AtLambdaN)
    } else {
        let second = g2_ln(n, alpha, 0.0);
        if second >= first {
            (second, Branch::G2AtOne)
        } else {
            (first, Branch::G1AtLambdaN)
        }
    };
    Ok(ErrorEstimate {
        n,
        alpha: alpha.get(),
        value: 4.0 * alpha.sin_pi() * s,
        branch,
        n_star: ns,
        ln_lambda_n,
        truncation_inflation: 1.0 + TAIL_CONSTANT,
    })
}

/// Smallest `n <= MAX_ORDER` whose estimate is at most `tol`.
///
/// Doubling brackets the answer, bisection narrows it; the result always
/// satisfies `estimate(n) <= tol < estimate(n - 1)` (for `n > 1`).
pub fn select_n(alpha: FractionalExponent, tol: f64) -> Result<usize> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain { what: "tolerance (must be in (0, 1))", value: tol });
    }
    let est = |n: usize| estimate_operator_error(n, alpha).map(|e| e.value);
    if est(1)? <= tol {
        return Ok(1);
    }
    let mut lo = 1;
    let mut hi = 2;
    loop {
        if est(hi)? <= tol {
            break;
        }
        if hi == MAX_ORDER {
            return Err(Error::ToleranceUnreachable { tol, max_order: MAX_ORDER });
        }
        lo = hi;
        hi = (2 * hi).min(MAX_ORDER);
    }
    // est(lo) > tol >= est(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if est(mid)? <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Estimate for the balanced rule keeping `k` nodes of each family:
/// `4(1+C) sin(απ) exp(-3.6 √α √(2k))`.
pub fn balanced_estimate(k: usize, alpha: FractionalExponent) -> f64 {
    let a = alpha.get();
    4.0 * (1.0 + TAIL_CONSTANT) * alpha.sin_pi() * exp(-3.6 * sqrt(a) * sqrt(2.0 * k as f64))
}

/// Estimate for the fast initial regime (`α > 1/2`, `n <= n*`) with `k`
/// retained nodes: `4(1+C) sin(απ) exp(-2.96 (1-α)^{1/3} (2k)^{2/3})`.
pub fn initial_balanced_estimate(k: usize, alpha: FractionalExponent) -> f64 {
    let a = alpha.get();
    let two_k = 2.0 * k as f64;
    4.0 * (1.0 + TAIL_CONSTANT) * alpha.sin_pi() * exp(-2.96 * cbrt(1.0 - a) * cbrt(two_k * two_k))
}
