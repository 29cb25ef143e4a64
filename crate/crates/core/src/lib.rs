#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod linalg;
mod math;
pub mod operator;
pub mod oracle;
pub mod plan;
pub mod quadrature;
pub mod rational;
pub mod scalar;

pub use error::{Error, Family, Result, SolveError};
pub use plan::{plan_balanced, plan_equalized, plan_full, TruncationPlan, Variant};
pub use quadrature::{gauss_laguerre, QuadratureRule, MAX_ORDER};
pub use rational::{build_rational, PartialFraction, RationalForm};
pub use scalar::{estimate_operator_error, select_n, Branch, ErrorEstimate, FractionalExponent};
pub use operator::{apply_fractional_inverse, rescale_to_unit, Operator};
