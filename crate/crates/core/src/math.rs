//! Elementary functions for `no_std` builds.

pub(crate) use libm::{cbrt, ceil, exp, fabs, floor, hypot, log as ln, pow, sin, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
