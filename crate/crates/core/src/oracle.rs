//! Reference values: exact powers, an adaptive-quadrature evaluation of the two
//! integrals, exact diagonal norm errors, and a Sinc-trapezoid baseline.

use alloc::vec::Vec;

use crate::error::{Error, Family, Result};
use crate::math::{exp, fabs, ln, sin, sqrt, PI};
use crate::rational::RationalForm;
use crate::scalar::FractionalExponent;

/// Accuracy the adaptive oracle aims for.
pub const ORACLE_TOLERANCE: f64 = 1e-12;
/// Integrand evaluations the adaptive oracle may spend.
pub const ORACLE_BUDGET: usize = 1_000_000;

const MIN_LEVEL: usize = 5;
const MAX_LEVEL: usize = 9;
const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub estimated_accuracy: f64,
    pub evaluations: usize,
}

/// `λ^{-α}`.
pub fn oracle_scalar_power(lambda: f64, alpha: FractionalExponent) -> Result<f64> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    Ok(exp(-alpha.get() * ln(lambda)))
}

/// Integrand of `I^{(1)}` or `I^{(2)}` at `x`.
pub fn integrand(family: Family, lambda: f64, alpha: f64, x: f64) -> f64 {
    match family {
        Family::First => exp(-x) / (1.0 + exp(-x / alpha) * lambda),
        Family::Second => exp(-x) / (exp(-x / (1.0 - alpha)) + lambda),
    }
}

/// Upper end of the truncated integration domain, `-ln(1e-16) · max(1, α, 1-α)`.
pub fn truncation_point(alpha: FractionalExponent) -> f64 {
    let a = alpha.get();
    -ln(1e-16) * 1.0f64.max(a).max(1.0 - a)
}

struct Panel {
    a: f64,
    b: f64,
    depth: u32,
}

/// Romberg table on `[a, b]` up to `MAX_LEVEL` halvings; returns
/// `(value, error estimate, evaluations)`.
fn romberg<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let mut prev = [0.0f64; MAX_LEVEL + 1];
    let mut cur = [0.0f64; MAX_LEVEL + 1];
    let h0 = b - a;
    let mut trap = 0.5 * h0 * (f(a) + f(b));
    let mut evals = 2;
    prev[0] = trap;
    let mut err = f64::INFINITY;
    let mut best = trap;
    for level in 1..=MAX_LEVEL {
        let m = 1usize << (level - 1);
        let h = h0 / (2 * m) as f64;
        let mut s = 0.0;
        for i in 0..m {
            s += f(a + (2 * i + 1) as f64 * h);
        }
        evals += m;
        trap = 0.5 * trap + h * s;
        cur[0] = trap;
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            cur[k] = cur[k - 1] + (cur[k - 1] - prev[k - 1]) / (factor - 1.0);
        }
        err = fabs(cur[level] - prev[level - 1]);
        best = cur[level];
        if level >= MIN_LEVEL && err <= tol {
            break;
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    (best, err, evals)
}

/// Adaptive Romberg integration of `f` over `[a, b]` with absolute target `tol`.
pub fn adaptive_integral<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    tol: f64,
    budget: usize,
) -> Result<OracleResult> {
    let total = breakpoints[breakpoints.len() - 1] - breakpoints[0];
    let mut stack: Vec<Panel> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| Panel { a: w[0], b: w[1], depth: 0 })
        .collect();
    stack.reverse();
    let mut value = 0.0;
    let mut accuracy = 0.0;
    let mut evaluations = 0;
    while let Some(p) = stack.pop() {
        let share = tol * 0.5 * (p.b - p.a) / total;
        let (v, e, n) = romberg(&f, p.a, p.b, share);
        evaluations += n;
        if evaluations > budget {
            return Err(Error::AccuracyNotReached { estimated: accuracy + e, evaluations });
        }
        if e <= share || p.depth >= MAX_DEPTH {
            value += v;
            accuracy += e;
        } else {
            let mid = 0.5 * (p.a + p.b);
            stack.push(Panel { a: mid, b: p.b, depth: p.depth + 1 });
            stack.push(Panel { a: p.a, b: mid, depth: p.depth + 1 });
        }
    }
    if accuracy > tol {
        return Err(Error::AccuracyNotReached { estimated: accuracy, evaluations });
    }
    Ok(OracleResult { value, estimated_accuracy: accuracy, evaluations })
}

/// `I^{(1)}(λ) = ∫₀^∞ e^{-x}(1 + e^{-x/α}λ)^{-1} dx` or
/// `I^{(2)}(λ) = ∫₀^∞ e^{-x}(e^{-x/(1-α)} + λ)^{-1} dx`, truncated at
/// [`truncation_point`] and integrated adaptively.
pub fn oracle_integral(family: Family, lambda: f64, alpha: FractionalExponent) -> Result<OracleResult> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    let a = alpha.get();
    let x_max = truncation_point(alpha);
    let knee = match family {
        Family::First => a * ln(lambda),
        Family::Second => (1.0 - a) * ln(lambda),
    };
    let mut breaks: Vec<f64> = Vec::with_capacity(3);
    breaks.push(0.0);
    if knee > 0.0 && knee < x_max {
        breaks.push(knee);
    }
    breaks.push(x_max);
    adaptive_integral(
        |x| integrand(family, lambda, a, x),
        &breaks,
        ORACLE_TOLERANCE,
        ORACLE_BUDGET,
    )
}

/// `sin(απ)/(απ) I^{(1)}(λ) + sin(απ)/((1-α)π) I^{(2)}(λ)`, which equals `λ^{-α}`.
pub fn oracle_reconstruction(lambda: f64, alpha: FractionalExponent) -> Result<f64> {
    let i1 = oracle_integral(Family::First, lambda, alpha)?;
    let i2 = oracle_integral(Family::Second, lambda, alpha)?;
    Ok(alpha.first_prefactor() * i1.value + alpha.second_prefactor() * i2.value)
}

/// `max_i |λ_i^{-α} − R(λ_i)|`.
pub fn oracle_diag_norm_error(eigenvalues: &[f64], form: &RationalForm) -> Result<f64> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidOperator("empty spectrum"));
    }
    let a = form.alpha();
    eigenvalues.iter().try_fold(0.0f64, |m, &l| {
        Ok(m.max(fabs(oracle_scalar_power(l, a)? - form.eval(l))))
    })
}

/// Symmetric trapezoid rule for
/// `λ^{-α} = (2 sin(απ)/π) ∫ e^{2αy}(1 + e^{2y}λ)^{-1} dy` with `2N+1` nodes
/// and step `h = (π/√α)/√N`.
///
/// Illustrative only; the step rule is fixed, not tuned per problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincRule {
    alpha: FractionalExponent,
    half: usize,
    step: f64,
}

impl SincRule {
    pub fn new(alpha: FractionalExponent, total_solves: usize) -> Result<Self> {
        if total_solves < 3 || total_solves.is_multiple_of(2) {
            return Err(Error::InvalidSolveCount(total_solves));
        }
        let half = (total_solves - 1) / 2;
        let step = PI / sqrt(alpha.get()) / sqrt(half as f64);
        Ok(Self { alpha, half, step })
    }

    pub fn total_solves(&self) -> usize {
        2 * self.half + 1
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        let a = self.alpha.get();
        let h = self.step;
        let n = self.half as i64;
        let mut acc = 0.0;
        for j in -n..=n {
            let y = j as f64 * h;
            acc += exp(2.0 * a * y) / (1.0 + exp(2.0 * y) * lambda);
        }
        2.0 * sin(a * PI) / PI * h * acc
    }
}

/// `max_i |λ_i^{-α} − R_sinc(λ_i)|`.
pub fn sinc_baseline_error(
    eigenvalues: &[f64],
    alpha: FractionalExponent,
    total_solves: usize,
) -> Result<f64> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidOperator("empty spectrum"));
    }
    let rule = SincRule::new(alpha, total_solves)?;
    eigenvalues.iter().try_fold(0.0f64, |m, &l| {
        Ok(m.max(fabs(oracle_scalar_power(l, alpha)? - rule.eval(l))))
    })
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len()) as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// `c` in `error ≈ C e^{-c √solves}`, fitted by least squares.
pub fn fitted_decay_constant(solves: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = solves.iter().map(|&m| sqrt(m as f64)).collect();
    let ys: Vec<f64> = errors.iter().map(|&e| ln(e)).collect();
    -least_squares_slope(&xs, &ys)
}
