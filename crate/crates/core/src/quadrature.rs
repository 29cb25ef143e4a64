//! Gauss-Laguerre rules for the weight `e^{-x}` on `[0, ∞)` and their truncation.
//!
//! Nodes are the eigenvalues of the Laguerre Jacobi matrix (diagonal `2k + 1`,
//! off-diagonal `k`), refined by a Newton step on `L_n`. Weights come from the
//! Christoffel sum `w_j = 1 / Σ_{k<n} L_k(θ_j)^2`, evaluated with a rescaled
//! three-term recurrence so that very small tail weights keep their relative
//! accuracy. Weights below the `f64` range underflow to zero.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::tridiagonal_eigenvalues;
use crate::math::{exp, fabs, ln};

/// Largest supported rule order.
pub const MAX_ORDER: usize = 2048;

const RESCALE_AT: f64 = 1e150;

/// An `n`-point Gauss-Laguerre rule with ascending nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ_j w_j f(θ_j)`, summed in ascending node order.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Number of nodes kept when every node beyond the first one at or above
    /// `threshold` is dropped, clamped to `1..=n`.
    ///
    /// Keeping `θ_k >= s` is what makes the dropped mass satisfy
    /// `Σ_{j>k} w_j <= C e^{-θ_k} <= C e^{-s}`.
    pub fn truncation_index(&self, threshold: f64) -> Result<usize> {
        if !(threshold > 0.0) {
            return Err(Error::Domain { what: "truncation threshold", value: threshold });
        }
        let below = self.nodes.partition_point(|&x| x < threshold);
        Ok((below + 1).min(self.order()))
    }

    /// `Σ_{j=k+1}^{n} w_j`.
    pub fn tail_weight_sum(&self, k: usize) -> Result<f64> {
        if k > self.order() {
            return Err(Error::InvalidPlan("retained count exceeds rule order"));
        }
        // smallest terms first
        Ok(self.weights[k..].iter().rev().sum())
    }
}

/// Builds the `n`-point Gauss-Laguerre rule, `1 <= n <= MAX_ORDER`.
pub fn gauss_laguerre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
    }
    let diag: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off)?;

    for x in nodes.iter_mut() {
        *x = polish_root(n, *x);
    }
    let weights = nodes.iter().map(|&x| christoffel_weight(n, x)).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// Returns `(L_n(x), L_{n-1}(x))` up to a common positive scale factor.
fn laguerre_pair_scaled(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if fabs(cur) > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
        }
    }
    (cur, prev)
}

fn polish_root(n: usize, mut x: f64) -> f64 {
    for _ in 0..3 {
        let (ln_, ln1) = laguerre_pair_scaled(n, x);
        let denom = n as f64 * (ln_ - ln1);
        if denom == 0.0 {
            break;
        }
        let step = x * ln_ / denom;
        if !step.is_finite() || fabs(step) > 1e-6 * x.max(1.0) {
            break;
        }
        x -= step;
        if fabs(step) <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    x
}

/// `1 / Σ_{k=0}^{n-1} L_k(x)^2` computed in log-scaled form.
fn christoffel_weight(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut sum = 1.0;
    let mut log_scale = 0.0;
    for k in 0..(n - 1) {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if fabs(cur) > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            sum /= RESCALE_AT * RESCALE_AT;
            log_scale += ln(RESCALE_AT);
        }
        sum += cur * cur;
    }
    if log_scale == 0.0 {
        1.0 / sum
    } else {
        exp(-2.0 * log_scale - ln(sum))
    }
}
