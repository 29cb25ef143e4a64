//! Node-count plans for the full, balanced and equalized rules.

use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math::{cbrt, ceil, floor, pow, sqrt, PI};
use crate::quadrature::MAX_ORDER;
use crate::scalar::{n_star, FractionalExponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Balanced,
    Equalized,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Balanced => "balanced",
            Variant::Equalized => "equalized",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "balanced" => Ok(Variant::Balanced),
            "equalized" => Ok(Variant::Equalized),
            _ => Err(Error::InvalidPlan("unknown variant")),
        }
    }
}

/// Rule orders and retained node counts for the two integral families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationPlan {
    variant: Variant,
    first_order: usize,
    first_kept: usize,
    second_order: usize,
    second_kept: usize,
}

impl TruncationPlan {
    pub fn new(
        variant: Variant,
        first_order: usize,
        first_kept: usize,
        second_order: usize,
        second_kept: usize,
    ) -> Result<Self> {
        for (n, k) in [(first_order, first_kept), (second_order, second_kept)] {
            if n == 0 || n > MAX_ORDER {
                return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
            }
            if k == 0 || k > n {
                return Err(Error::InvalidPlan("retained count must lie in 1..=order"));
            }
        }
        if variant == Variant::Full
            && (first_order != second_order
                || first_kept != first_order
                || second_kept != second_order)
        {
            return Err(Error::InvalidPlan("full rule keeps every node of one order"));
        }
        Ok(Self { variant, first_order, first_kept, second_order, second_kept })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `(n₁, k₁)`.
    pub fn first(&self) -> (usize, usize) {
        (self.first_order, self.first_kept)
    }

    /// `(n₂, k₂)`.
    pub fn second(&self) -> (usize, usize) {
        (self.second_order, self.second_kept)
    }

    /// Shifted solves needed per application: `k₁ + k₂`.
    pub fn predicted_inversions(&self) -> usize {
        self.first_kept + self.second_kept
    }
}

/// `⌊2√3 (α n² / π²)^{1/3}⌋`, clamped to `1..=n`.
pub fn balanced_count(n: usize, alpha: FractionalExponent) -> usize {
    let nf = n as f64;
    let raw = 2.0 * sqrt(3.0) * cbrt(alpha.get() * nf * nf / (PI * PI));
    clamp_count(floor(raw), n)
}

/// `2 ⌊(1-α)^{1/4} (2n/π)^{3/4}⌋`, clamped to `1..=n`.
pub fn initial_count(n: usize, alpha: FractionalExponent) -> usize {
    let raw = pow(1.0 - alpha.get(), 0.25) * pow(2.0 * n as f64 / PI, 0.75);
    clamp_count(2.0 * floor(raw), n)
}

fn clamp_count(k: f64, n: usize) -> usize {
    if k < 1.0 {
        1
    } else {
        (k as usize).min(n)
    }
}

fn clamp_order(n: f64) -> usize {
    if n < 1.0 {
        1
    } else if n >= MAX_ORDER as f64 {
        MAX_ORDER
    } else {
        n as usize
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Whether the first family's error governs at order `n`.
pub fn first_family_dominates(n: usize, alpha: FractionalExponent) -> bool {
    alpha.get() <= 0.5 || n as f64 > n_star(alpha)
}

pub fn plan_full(n: usize) -> Result<TruncationPlan> {
    check_order(n)?;
    TruncationPlan::new(Variant::Full, n, n, n, n)
}

/// Both families keep the first `k_n^{(1)}` nodes of the order-`n` rule.
pub fn plan_balanced(n: usize, alpha: FractionalExponent) -> Result<TruncationPlan> {
    check_order(n)?;
    let k = balanced_count(n, alpha);
    TruncationPlan::new(Variant::Balanced, n, k, n, k)
}

/// Different orders for the two families, paired so their error maxima match.
///
/// When the first family governs, `n₁ = n` and
/// `n₂ = ⌈(9/8) π^{1/3} α^{4/3} / (1-α) · n₁^{2/3}⌉`; otherwise `n₂ = n` and
/// `n₁ = ⌈(8(1-α))^{3/2} / (27 α² π^{1/2}) · n₂^{3/2}⌉`. Then
/// `k₁ = k^{(1)}(n₁)` and `k₂ = k^{(2)}(n₂)`.
pub fn plan_equalized(n: usize, alpha: FractionalExponent) -> Result<TruncationPlan> {
    check_order(n)?;
    let a = alpha.get();
    let (n1, n2) = if first_family_dominates(n, alpha) {
        let nf = n as f64;
        let paired = 9.0 / 8.0 * cbrt(PI) * pow(a, 4.0 / 3.0) / (1.0 - a) * cbrt(nf * nf);
        (n, clamp_order(ceil(paired)))
    } else {
        let nf = n as f64;
        let paired = pow(8.0 * (1.0 - a), 1.5) / (27.0 * a * a * sqrt(PI)) * pow(nf, 1.5);
        (clamp_order(ceil(paired)), n)
    };
    TruncationPlan::new(
        Variant::Equalized,
        n1,
        balanced_count(n1, alpha),
        n2,
        initial_count(n2, alpha),
    )
}

/// Dispatches on `variant`.
pub fn plan(variant: Variant, n: usize, alpha: FractionalExponent) -> Result<TruncationPlan> {
    match variant {
        Variant::Full => plan_full(n),
        Variant::Balanced => plan_balanced(n, alpha),
        Variant::Equalized => plan_equalized(n, alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> FractionalExponent {
        FractionalExponent::new(a).unwrap()
    }

    #[test]
    fn balanced_count_example() {
        // 2√3 (0.5·10⁴/π²)^{1/3} = 27.60…
        let by_hand = 2.0 * 1.7320508075688772 * libm::cbrt(5000.0 / 9.869604401089358);
        assert!(by_hand > 27.0 && by_hand < 28.0);
        assert_eq!(balanced_count(100, alpha(0.5)), 27);
        let p = plan_balanced(100, alpha(0.5)).unwrap();
        assert_eq!(p.first(), (100, 27));
        assert_eq!(p.second(), (100, 27));
        assert_eq!(p.predicted_inversions(), 54);
    }

    #[test]
    fn balanced_scaling() {
        for n in [50, 80, 120] {
            let ratio = balanced_count(4 * n, alpha(0.5)) as f64 / balanced_count(n, alpha(0.5)) as f64;
            let ideal = libm::pow(4.0, 2.0 / 3.0);
            assert!(fabs_rel(ratio, ideal) <= 0.15, "n={n} ratio={ratio}");
        }
    }

    fn fabs_rel(a: f64, b: f64) -> f64 {
        libm::fabs(a - b) / b
    }

    #[test]
    fn counts_clamp_to_one() {
        assert_eq!(balanced_count(1, alpha(0.01)), 1);
        assert_eq!(initial_count(1, alpha(0.9)), 1);
        let p = plan_equalized(1, alpha(0.5)).unwrap();
        assert!(p.first().1 >= 1 && p.second().1 >= 1);
    }

    #[test]
    fn full_plan_shape() {
        let p = plan_full(20).unwrap();
        assert_eq!(p.first(), (20, 20));
        assert_eq!(p.predicted_inversions(), 40);
        assert!(TruncationPlan::new(Variant::Full, 20, 19, 20, 20).is_err());
        assert!(TruncationPlan::new(Variant::Balanced, 20, 21, 20, 20).is_err());
        assert!(TruncationPlan::new(Variant::Balanced, 20, 0, 20, 1).is_err());
        assert!(plan_full(0).is_err());
    }

    #[test]
    fn equalized_first_branch() {
        let a = alpha(0.25);
        let p = plan_equalized(60, a).unwrap();
        let (n1, k1) = p.first();
        let (n2, k2) = p.second();
        assert_eq!((n1, k1), (60, balanced_count(60, a)));
        // (9/8) π^{1/3} 0.25^{4/3} / 0.75 · 60^{2/3} = 5.30… -> 6
        assert_eq!(n2, 6);
        assert_eq!(k2, initial_count(6, a));
        assert!(k1 + k2 <= 2 * k1.max(k2));
    }

    #[test]
    fn equalized_second_branch() {
        let a = alpha(0.75);
        let p = plan_equalized(60, a).unwrap();
        let (n1, _) = p.first();
        let (n2, k2) = p.second();
        assert_eq!(n2, 60);
        assert_eq!(k2, initial_count(60, a));
        // (8·0.25)^{3/2} / (27·0.5625·√π) · 60^{3/2} = 48.8… -> 49
        assert_eq!(n1, 49);
    }

    #[test]
    fn variant_parse() {
        assert_eq!("balanced".parse::<Variant>().unwrap(), Variant::Balanced);
        assert!("other".parse::<Variant>().is_err());
    }
}
