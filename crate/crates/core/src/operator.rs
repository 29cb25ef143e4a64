//! Applying a rational form to a self-adjoint positive operator through shifted solves.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Family, Result, SolveError};
use crate::linalg::{
    solve_shifted_tridiagonal, symmetric_eigen, symmetric_spectral_norm, Cholesky, DenseMatrix,
    SymmetricBand,
};
use crate::math::{exp, fabs, ln, pow, sin, PI};
use crate::rational::RationalForm;
use crate::scalar::FractionalExponent;

/// Largest dimension accepted by dense materialization.
pub const DENSE_CAP: usize = 2000;

/// A self-adjoint positive operator with spectrum bounded below by `lambda_min`.
pub trait Operator {
    fn dimension(&self) -> usize;

    /// `L v`.
    fn apply(&self, v: &[f64]) -> Vec<f64>;

    /// Solves `(sigma I + tau L) x = v` for `sigma, tau >= 0`, not both zero.
    ///
    /// `sigma` can be exactly zero when a second-family shift underflows.
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError>;

    fn lambda_min(&self) -> f64;

    /// `false` if `shifted_solve` must not be called from several threads at once.
    fn concurrent_solves(&self) -> bool {
        true
    }

    /// Eigenvalues in the canonical basis, for operators that are diagonal there.
    fn diagonal(&self) -> Option<&[f64]> {
        None
    }
}

impl<O: Operator + ?Sized> Operator for &O {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        (**self).apply(v)
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        (**self).shifted_solve(sigma, tau, v)
    }
    fn lambda_min(&self) -> f64 {
        (**self).lambda_min()
    }
    fn concurrent_solves(&self) -> bool {
        (**self).concurrent_solves()
    }
    fn diagonal(&self) -> Option<&[f64]> {
        (**self).diagonal()
    }
}

fn check_len(expected: usize, v: &[f64]) -> core::result::Result<(), SolveError> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(SolveError::DimensionMismatch { expected, found: v.len() })
    }
}

fn check_shift(sigma: f64, tau: f64) -> core::result::Result<(), SolveError> {
    if sigma >= 0.0 && tau >= 0.0 && sigma + tau > 0.0 && sigma.is_finite() && tau.is_finite() {
        Ok(())
    } else {
        Err(SolveError::InvalidShift { sigma, tau })
    }
}

/// `diag(λ_1, …, λ_m)` with every `λ_i > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal {
    values: Vec<f64>,
    lambda_min: f64,
}

impl Diagonal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOperator("empty spectrum"));
        }
        if values.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::NotPositiveDefinite);
        }
        let lambda_min = values.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Self { values, lambda_min })
    }

    /// `diag(1, 2, …, size)^exponent`.
    pub fn power(size: usize, exponent: f64) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidOperator("size must be positive"));
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidOperator("exponent must be finite"));
        }
        Self::new((1..=size).map(|j| pow(j as f64, exponent)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Operator for Diagonal {
    fn dimension(&self) -> usize {
        self.values.len()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.values.iter().zip(v).map(|(l, x)| l * x).collect()
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        check_len(self.values.len(), v)?;
        check_shift(sigma, tau)?;
        Ok(self.values.iter().zip(v).map(|(l, x)| x / (sigma + tau * l)).collect())
    }
    fn lambda_min(&self) -> f64 {
        self.lambda_min
    }
    fn diagonal(&self) -> Option<&[f64]> {
        Some(&self.values)
    }
}

fn fd_lambda_min(m: usize) -> f64 {
    let h = 1.0 / (m as f64 + 1.0);
    let s = sin(PI / (2.0 * (m as f64 + 1.0)));
    4.0 * s * s / (h * h)
}

/// Second-difference Laplacian `(-1, 2, -1)/h²` on `m` interior points of `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FdLaplacian1d {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl FdLaplacian1d {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOperator("grid must have at least one point"));
        }
        let h = 1.0 / (m as f64 + 1.0);
        let s = 1.0 / (h * h);
        Ok(Self { diag: vec![2.0 * s; m], off: vec![-s; m - 1] })
    }

    /// `4 sin²(jπ/(2(m+1)))/h²`, `j = 1..=m`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = self.diag.len() as f64;
        let h = 1.0 / (m + 1.0);
        (1..=self.diag.len())
            .map(|j| {
                let s = sin(j as f64 * PI / (2.0 * (m + 1.0)));
                4.0 * s * s / (h * h)
            })
            .collect()
    }
}

impl Operator for FdLaplacian1d {
    fn dimension(&self) -> usize {
        self.diag.len()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        check_shift(sigma, tau)?;
        solve_shifted_tridiagonal(&self.diag, &self.off, sigma, tau, v)
    }
    fn lambda_min(&self) -> f64 {
        fd_lambda_min(self.diag.len())
    }
}

/// Five-point Laplacian on an `m × m` interior grid of the unit square,
/// lexicographic ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct FdLaplacian2d {
    m: usize,
    band: SymmetricBand,
}

impl FdLaplacian2d {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOperator("grid must have at least one point"));
        }
        let h = 1.0 / (m as f64 + 1.0);
        let s = 1.0 / (h * h);
        let dim = m * m;
        let mut band = SymmetricBand::zeros(dim, m);
        for i in 0..dim {
            band.set(i, i, 4.0 * s);
            if i % m != 0 {
                band.set(i, i - 1, -s);
            }
            if i >= m {
                band.set(i, i - m, -s);
            }
        }
        Ok(Self { m, band })
    }

    pub fn grid(&self) -> usize {
        self.m
    }
}

impl Operator for FdLaplacian2d {
    fn dimension(&self) -> usize {
        self.band.dim()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.band.mul_vec(v)
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        check_shift(sigma, tau)?;
        self.band.solve_shifted(sigma, tau, v)
    }
    fn lambda_min(&self) -> f64 {
        2.0 * fd_lambda_min(self.m)
    }
}

/// Dense symmetric positive definite matrix with a caller-supplied spectral lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSpd {
    matrix: DenseMatrix,
    lambda_min: f64,
}

impl DenseSpd {
    /// Rejects asymmetric input and input whose Cholesky factorization fails.
    pub fn new(matrix: DenseMatrix, lambda_min: f64) -> Result<Self> {
        if matrix.dim() == 0 {
            return Err(Error::InvalidOperator("empty matrix"));
        }
        if !(lambda_min > 0.0) || !lambda_min.is_finite() {
            return Err(Error::Domain { what: "lambda_min", value: lambda_min });
        }
        if matrix.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidOperator("non-finite entry"));
        }
        if matrix.asymmetry() > 1e-12 * matrix.max_abs() {
            return Err(Error::InvalidOperator("matrix is not symmetric"));
        }
        Cholesky::new(&matrix).map_err(|_| Error::NotPositiveDefinite)?;
        Ok(Self { matrix, lambda_min })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

impl Operator for DenseSpd {
    fn dimension(&self) -> usize {
        self.matrix.dim()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(v)
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        let n = self.matrix.dim();
        check_len(n, v)?;
        check_shift(sigma, tau)?;
        let mut data: Vec<f64> = self.matrix.as_slice().iter().map(|x| tau * x).collect();
        for i in 0..n {
            data[i * n + i] += sigma;
        }
        let shifted = DenseMatrix::from_row_major(n, data)
            .map_err(|_| SolveError::DimensionMismatch { expected: n * n, found: 0 })?;
        Ok(Cholesky::new(&shifted)?.solve(v))
    }
    fn lambda_min(&self) -> f64 {
        self.lambda_min
    }
}

/// `L / λ_min`, whose spectrum lies in `[1, ∞)`.
#[derive(Debug, Clone, Copy)]
pub struct Scaled<O> {
    inner: O,
    scale: f64,
}

impl<O: Operator> Scaled<O> {
    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl<O: Operator> Operator for Scaled<O> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = self.inner.apply(v);
        for x in &mut out {
            *x /= self.scale;
        }
        out
    }
    fn shifted_solve(&self, sigma: f64, tau: f64, v: &[f64])
        -> core::result::Result<Vec<f64>, SolveError> {
        self.inner.shifted_solve(sigma, tau / self.scale, v)
    }
    fn lambda_min(&self) -> f64 {
        1.0
    }
    fn concurrent_solves(&self) -> bool {
        self.inner.concurrent_solves()
    }
}

/// Wraps `op` as `L / λ_min` and returns the postfactor `λ_min^{-α}`.
pub fn rescale_to_unit<O: Operator>(op: O, alpha: FractionalExponent) -> Result<(Scaled<O>, f64)> {
    let scale = op.lambda_min();
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Domain { what: "lambda_min", value: scale });
    }
    Ok((Scaled { inner: op, scale }, postfactor(scale, alpha)))
}

/// `λ_min^{-α}`, the factor undoing the spectral rescaling.
pub fn postfactor(lambda_min: f64, alpha: FractionalExponent) -> f64 {
    exp(-alpha.get() * ln(lambda_min))
}

/// One shifted solve `coefficient · (sigma I + tau L)^{-1} b` of an application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedTerm {
    pub family: Family,
    /// Position of the node within its family, counting from 1.
    pub node: usize,
    pub coefficient: f64,
    pub sigma: f64,
    pub tau: f64,
}

/// The shifted solves for `form` on an operator with lower bound `lambda_min`,
/// in accumulation order: first family ascending, then second family ascending.
///
/// The spectral rescaling is folded into `tau`.
pub fn shifted_terms(form: &RationalForm, lambda_min: f64) -> Result<Vec<ShiftedTerm>> {
    if !(lambda_min > 0.0) || !lambda_min.is_finite() {
        return Err(Error::Domain { what: "lambda_min", value: lambda_min });
    }
    let first = form.first_family().iter().enumerate().map(|(j, t)| ShiftedTerm {
        family: Family::First,
        node: j + 1,
        coefficient: t.coefficient,
        sigma: 1.0,
        tau: t.shift / lambda_min,
    });
    let second = form.second_family().iter().enumerate().map(|(j, t)| ShiftedTerm {
        family: Family::Second,
        node: j + 1,
        coefficient: t.coefficient,
        sigma: t.shift,
        tau: 1.0 / lambda_min,
    });
    Ok(first.chain(second).collect())
}

/// Solves one term, tagging a failure with its family and node.
pub fn solve_term<O: Operator + ?Sized>(op: &O, term: &ShiftedTerm, b: &[f64]) -> Result<Vec<f64>> {
    op.shifted_solve(term.sigma, term.tau, b).map_err(|source| Error::ShiftedSolve {
        family: term.family,
        node: term.node,
        source,
    })
}

/// `postfactor · Σ_i c_i x_i`, summed in the order of `terms`.
pub fn accumulate(terms: &[ShiftedTerm], solutions: &[Vec<f64>], postfactor: f64) -> Vec<f64> {
    let dim = solutions.first().map_or(0, Vec::len);
    let mut out = vec![0.0; dim];
    for (t, x) in terms.iter().zip(solutions) {
        for (o, xi) in out.iter_mut().zip(x) {
            *o += t.coefficient * xi;
        }
    }
    for o in &mut out {
        *o *= postfactor;
    }
    out
}

fn check_apply<O: Operator + ?Sized>(op: &O, b: &[f64]) -> Result<f64> {
    if b.len() != op.dimension() {
        return Err(Error::DimensionMismatch { expected: op.dimension(), found: b.len() });
    }
    let lmin = op.lambda_min();
    if !(lmin > 0.0) || !lmin.is_finite() {
        return Err(Error::Domain { what: "lambda_min", value: lmin });
    }
    Ok(lmin)
}

/// `R(L) b ≈ L^{-α} b`, rescaled so the form only sees the spectrum of `L / λ_min`.
///
/// Solves run one after another; [`shifted_terms`], [`solve_term`] and
/// [`accumulate`] allow running them concurrently with the same result.
pub fn apply_fractional_inverse<O: Operator + ?Sized>(
    op: &O,
    b: &[f64],
    form: &RationalForm,
) -> Result<Vec<f64>> {
    let lmin = check_apply(op, b)?;
    let terms = shifted_terms(form, lmin)?;
    let post = postfactor(lmin, form.alpha());
    let solutions = terms.iter().map(|t| solve_term(op, t, b)).collect::<Result<Vec<_>>>()?;
    Ok(accumulate(&terms, &solutions, post))
}

fn check_dense_cap(dim: usize) -> Result<()> {
    if dim > DENSE_CAP {
        Err(Error::DenseCapExceeded { dimension: dim, cap: DENSE_CAP })
    } else {
        Ok(())
    }
}

/// The matrix whose column `j` is `R(L) e_j`.
pub fn dense_fractional_inverse<O: Operator + ?Sized>(
    op: &O,
    form: &RationalForm,
) -> Result<DenseMatrix> {
    let n = op.dimension();
    check_dense_cap(n)?;
    let mut out = DenseMatrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = apply_fractional_inverse(op, &e, form)?;
        out.set_column(j, &col);
        e[j] = 0.0;
    }
    Ok(out)
}

/// The matrix of `L` in the canonical basis.
pub fn to_dense<O: Operator + ?Sized>(op: &O) -> Result<DenseMatrix> {
    let n = op.dimension();
    check_dense_cap(n)?;
    let mut out = DenseMatrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        out.set_column(j, &op.apply(&e));
        e[j] = 0.0;
    }
    Ok(out)
}

/// `L^{-α}` from the diagonal or from a symmetric eigendecomposition.
pub fn exact_fractional_inverse<O: Operator + ?Sized>(
    op: &O,
    alpha: FractionalExponent,
) -> Result<DenseMatrix> {
    let a = alpha.get();
    if let Some(d) = op.diagonal() {
        let powers: Vec<f64> = d.iter().map(|&l| exp(-a * ln(l))).collect();
        return Ok(DenseMatrix::from_diagonal(&powers));
    }
    let (values, vectors) = symmetric_eigen(&to_dense(op)?)?;
    if values.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = values.len();
    let powers: Vec<f64> = values.iter().map(|&l| exp(-a * ln(l))).collect();
    let mut out = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..n).map(|k| vectors[(i, k)] * powers[k] * vectors[(j, k)]).sum();
            out[(i, j)] = s;
            out[(j, i)] = s;
        }
    }
    Ok(out)
}

/// `‖L^{-α} − R(L)‖₂`.
///
/// For diagonal operators this is the largest scalar error over the eigenvalues;
/// otherwise both matrices are materialized.
pub fn norm_error<O: Operator + ?Sized>(op: &O, form: &RationalForm) -> Result<f64> {
    let a = form.alpha().get();
    if let Some(d) = op.diagonal() {
        let lmin = op.lambda_min();
        let post = postfactor(lmin, form.alpha());
        return Ok(d.iter().fold(0.0f64, |m, &l| {
            let exact = exp(-a * ln(l));
            m.max(fabs(exact - post * form.eval(l / lmin)))
        }));
    }
    let exact = exact_fractional_inverse(op, form.alpha())?;
    let approx = dense_fractional_inverse(op, form)?;
    symmetric_spectral_norm(&exact.sub(&approx).symmetrized())
}
