//! Operator specs: `diagpow:<size>:<exponent>`, `diag:<file>`, `fd1d:<m>`, `fd2d:<m>`, `dense:<file>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use fracpow_core::operator::{DenseSpd, Diagonal, FdLaplacian1d, FdLaplacian2d};
use fracpow_core::{Operator, SolveError};

use crate::error::{Error, Result};
use crate::io::{read_dense_matrix, read_vector};

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    DiagPower { size: usize, exponent: f64 },
    Diag(PathBuf),
    Fd1d(usize),
    Fd2d(usize),
    Dense(PathBuf),
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::DiagPower { size, exponent } => write!(f, "diagpow:{size}:{exponent}"),
            OperatorSpec::Diag(p) => write!(f, "diag:{}", p.display()),
            OperatorSpec::Fd1d(m) => write!(f, "fd1d:{m}"),
            OperatorSpec::Fd2d(m) => write!(f, "fd2d:{m}"),
            OperatorSpec::Dense(p) => write!(f, "dense:{}", p.display()),
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::OperatorSpec { spec: s.to_owned(), message: message.to_owned() };
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad("expected `<kind>:<params>`"))?;
        let positive = |t: &str| -> Result<usize> {
            t.parse::<usize>().ok().filter(|&m| m > 0).ok_or_else(|| bad("expected a positive integer"))
        };
        match kind {
            "diagpow" => {
                let (size, exp) = rest.split_once(':').ok_or_else(|| bad("expected `diagpow:<size>:<exponent>`"))?;
                let exponent: f64 = exp.parse().ok().filter(|e: &f64| e.is_finite()).ok_or_else(|| bad("exponent must be a finite number"))?;
                Ok(OperatorSpec::DiagPower { size: positive(size)?, exponent })
            }
            "diag" | "dense" if rest.is_empty() => Err(bad("missing file path")),
            "diag" => Ok(OperatorSpec::Diag(rest.into())),
            "dense" => Ok(OperatorSpec::Dense(rest.into())),
            "fd1d" => Ok(OperatorSpec::Fd1d(positive(rest)?)),
            "fd2d" => Ok(OperatorSpec::Fd2d(positive(rest)?)),
            _ => Err(bad("unknown kind (diagpow, diag, fd1d, fd2d, dense)")),
        }
    }
}

impl OperatorSpec {
    pub fn build(&self) -> Result<BuiltOperator> {
        Ok(match self {
            OperatorSpec::DiagPower { size, exponent } => {
                BuiltOperator::Diagonal(Diagonal::power(*size, *exponent)?)
            }
            OperatorSpec::Diag(p) => BuiltOperator::Diagonal(Diagonal::new(read_vector(p)?)?),
            OperatorSpec::Fd1d(m) => BuiltOperator::Fd1d(FdLaplacian1d::new(*m)?),
            OperatorSpec::Fd2d(m) => BuiltOperator::Fd2d(FdLaplacian2d::new(*m)?),
            OperatorSpec::Dense(p) => {
                let (matrix, lmin) = read_dense_matrix(p)?;
                BuiltOperator::Dense(DenseSpd::new(matrix, lmin)?)
            }
        })
    }
}

#[derive(Debug, Clone)]
pub enum BuiltOperator {
    Diagonal(Diagonal),
    Fd1d(FdLaplacian1d),
    Fd2d(FdLaplacian2d),
    Dense(DenseSpd),
}

impl BuiltOperator {
    fn inner(&self) -> &dyn Operator {
        match self {
            BuiltOperator::Diagonal(o) => o,
            BuiltOperator::Fd1d(o) => o,
            BuiltOperator::Fd2d(o) => o,
            BuiltOperator::Dense(o) => o,
        }
    }

    /// Eigenvalues when known in closed form.
    pub fn spectrum(&self) -> Option<Vec<f64>> {
        match self {
            BuiltOperator::Diagonal(o) => Some(o.values().to_vec()),
            BuiltOperator::Fd1d(o) => Some(o.eigenvalues()),
            BuiltOperator::Fd2d(o) => {
                let one = FdLaplacian1d::new(o.grid()).ok()?.eigenvalues();
                Some(one.iter().flat_map(|a| one.iter().map(move |b| a + b)).collect())
            }
            BuiltOperator::Dense(_) => None,
        }
    }
}

impl Operator for BuiltOperator {
    fn dimension(&self) -> usize {
        self.inner().dimension()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.inner().apply(v)
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64]) -> std::result::Result<Vec<f64>, SolveError> {
        self.inner().shifted_solve(sigma, tau, v)
    }
    fn lambda_min(&self) -> f64 {
        self.inner().lambda_min()
    }
    fn concurrent_solves(&self) -> bool {
        self.inner().concurrent_solves()
    }
    fn diagonal(&self) -> Option<&[f64]> {
        self.inner().diagonal()
    }
}
