//! Partial-fraction form of the (truncated) Gauss-Laguerre rational approximation.

use alloc::vec::Vec;

use crate::error::Result;
use crate::math::exp;
use crate::plan::{TruncationPlan, Variant};
use crate::quadrature::{gauss_laguerre, QuadratureRule};
use crate::scalar::FractionalExponent;

/// One term `coefficient · (σ + τ λ)^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialFraction {
    pub coefficient: f64,
    /// `d_j = e^{-θ_j/α}` for the first family, `s_j = e^{-θ_j/(1-α)}` for the second.
    pub shift: f64,
}

/// `Σ a_j (1 + d_j λ)^{-1} + Σ b_j (s_j + λ)^{-1}`.
///
/// Immutable once built; both lists are in ascending node order.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalForm {
    alpha: FractionalExponent,
    first: Vec<PartialFraction>,
    second: Vec<PartialFraction>,
    plan: TruncationPlan,
}

impl RationalForm {
    pub fn alpha(&self) -> FractionalExponent {
        self.alpha
    }

    /// Terms `a_j (1 + d_j λ)^{-1}`.
    pub fn first_family(&self) -> &[PartialFraction] {
        &self.first
    }

    /// Terms `b_j (s_j + λ)^{-1}`.
    pub fn second_family(&self) -> &[PartialFraction] {
        &self.second
    }

    pub fn plan(&self) -> &TruncationPlan {
        &self.plan
    }

    pub fn variant(&self) -> Variant {
        self.plan.variant()
    }

    pub fn inversions(&self) -> usize {
        self.first.len() + self.second.len()
    }

    /// Evaluates the form at `λ` (meaningful for `λ >= 1`).
    ///
    /// One running sum, first family then second, each in ascending node order.
    pub fn eval(&self, lambda: f64) -> f64 {
        let mut acc = 0.0;
        for t in &self.first {
            acc += t.coefficient * (1.0 / (1.0 + t.shift * lambda));
        }
        for t in &self.second {
            acc += t.coefficient * (1.0 / (t.shift + lambda));
        }
        acc
    }
}

fn family(rule: &QuadratureRule, keep: usize, prefactor: f64, scale: f64) -> Vec<PartialFraction> {
    rule.nodes()
        .iter()
        .zip(rule.weights())
        .take(keep)
        .map(|(&x, &w)| PartialFraction { coefficient: prefactor * w, shift: exp(-x / scale) })
        .collect()
}

/// Assembles the partial fractions for `plan`.
pub fn build_rational(alpha: FractionalExponent, plan: &TruncationPlan) -> Result<RationalForm> {
    let (n1, k1) = plan.first();
    let (n2, k2) = plan.second();
    let rule1 = gauss_laguerre(n1)?;
    let rule2 = if n2 == n1 { rule1.clone() } else { gauss_laguerre(n2)? };
    let a = alpha.get();
    Ok(RationalForm {
        alpha,
        first: family(&rule1, k1, alpha.first_prefactor(), a),
        second: family(&rule2, k2, alpha.second_prefactor(), 1.0 - a),
        plan: *plan,
    })
}
