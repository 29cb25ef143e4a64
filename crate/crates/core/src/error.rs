use core::fmt;

/// Which partial-fraction family a shifted solve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Terms `a_j (1 + d_j L)^{-1}`.
    First,
    /// Terms `b_j (s_j + L)^{-1}`.
    Second,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::First => f.write_str("family 1"),
            Family::Second => f.write_str("family 2"),
        }
    }
}

/// Failure reported by an operator's shifted solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveError {
    NotPositiveDefinite,
    ZeroPivot { row: usize },
    DimensionMismatch { expected: usize, found: usize },
    InvalidShift { sigma: f64, tau: f64 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NotPositiveDefinite => f.write_str("operator not positive definite"),
            SolveError::ZeroPivot { row } => write!(f, "zero pivot at row {row}"),
            SolveError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            SolveError::InvalidShift { sigma, tau } => {
                write!(f, "invalid shift pair (sigma={sigma}, tau={tau})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Quadrature order outside `1..=max`.
    OrderOutOfRange { order: usize, max: usize },
    /// Fractional exponent not in the open interval (0, 1).
    InvalidExponent(f64),
    /// A real argument violated its domain, e.g. `lambda < 1`.
    Domain { what: &'static str, value: f64 },
    /// `g1` has no interior maximiser; the supremum over `lambda >= 1` sits at `lambda = 1`.
    NoInteriorMaximum,
    /// The closed-form maximiser approximation is undefined for this order.
    OrderTooSmall { order: usize },
    ToleranceUnreachable { tol: f64, max_order: usize },
    InvalidPlan(&'static str),
    DimensionMismatch { expected: usize, found: usize },
    NotPositiveDefinite,
    ShiftedSolve { family: Family, node: usize, source: SolveError },
    DenseCapExceeded { dimension: usize, cap: usize },
    AccuracyNotReached { estimated: f64, evaluations: usize },
    InvalidSolveCount(usize),
    InvalidOperator(&'static str),
    RootNotBracketed,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderOutOfRange { order, max } => {
                write!(f, "order out of range: {order} (supported 1..={max})")
            }
            Error::InvalidExponent(a) => write!(f, "fractional exponent {a} not in (0, 1)"),
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::NoInteriorMaximum => f.write_str("no root: maximiser is the boundary lambda = 1"),
            Error::OrderTooSmall { order } => write!(f, "n too small: {order}"),
            Error::ToleranceUnreachable { tol, max_order } => {
                write!(f, "tolerance unreachable: {tol:e} not met at n = {max_order}")
            }
            Error::InvalidPlan(why) => write!(f, "invalid truncation plan: {why}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotPositiveDefinite => f.write_str("operator not positive definite"),
            Error::ShiftedSolve { family, node, source } => {
                write!(f, "shifted solve failed ({family}, node {node}): {source}")
            }
            Error::DenseCapExceeded { dimension, cap } => {
                write!(f, "dense materialisation cap exceeded: {dimension} > {cap}")
            }
            Error::AccuracyNotReached { estimated, evaluations } => write!(
                f,
                "accuracy not reached: estimated error {estimated:e} after {evaluations} evaluations"
            ),
            Error::InvalidSolveCount(m) => {
                write!(f, "invalid solve count {m}: must be odd and at least 3")
            }
            Error::InvalidOperator(why) => write!(f, "invalid operator: {why}"),
            Error::RootNotBracketed => f.write_str("root not bracketed"),
        }
    }
}

impl core::error::Error for Error {}

impl From<SolveError> for Error {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NotPositiveDefinite => Error::NotPositiveDefinite,
            SolveError::DimensionMismatch { expected, found } => {
                Error::DimensionMismatch { expected, found }
            }
            _ => Error::InvalidOperator("shifted solve failed"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
