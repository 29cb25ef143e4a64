//! Small dense, banded and tridiagonal kernels.
//!
//! Everything here works on `f64` slices in row-major order. The routines are
//! sized for desk-scale problems (a few thousand unknowns at most).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result, SolveError};
use crate::math::{fabs, hypot, sqrt};

/// Square dense matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major data; `data.len()` must be `dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[f64]) {
        for (i, &v) in col.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        DenseMatrix { dim: self.dim, data }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Largest absolute difference between `self` and its transpose.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max(fabs(self[(i, j)] - self[(j, i)]));
            }
        }
        worst
    }

    /// `(A + A^T) / 2`.
    pub fn symmetrized(&self) -> DenseMatrix {
        let mut s = self.clone();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(fabs(v)))
    }
}

impl core::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    factor: DenseMatrix,
}

impl Cholesky {
    /// Factors `a`; only the lower triangle is read.
    pub fn new(a: &DenseMatrix) -> core::result::Result<Self, SolveError> {
        let n = a.dim();
        let mut l = DenseMatrix::zeros(n);
        for j in 0..n {
            let mut diag = a[(j, j)];
            for k in 0..j {
                diag -= l[(j, k)] * l[(j, k)];
            }
            if !(diag > 0.0) || !diag.is_finite() {
                return Err(SolveError::NotPositiveDefinite);
            }
            let ljj = sqrt(diag);
            l[(j, j)] = ljj;
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { factor: l })
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let l = &self.factor;
        let n = l.dim();
        let mut y = rhs.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        y
    }
}

/// Solves `(sigma I + tau T) x = rhs` for the symmetric tridiagonal `T` with
/// main diagonal `diag` and off-diagonal `off` (Thomas algorithm).
pub fn solve_shifted_tridiagonal(
    diag: &[f64],
    off: &[f64],
    sigma: f64,
    tau: f64,
    rhs: &[f64],
) -> core::result::Result<Vec<f64>, SolveError> {
    let n = diag.len();
    if rhs.len() != n {
        return Err(SolveError::DimensionMismatch { expected: n, found: rhs.len() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut pivot = sigma + tau * diag[0];
    if pivot == 0.0 {
        return Err(SolveError::ZeroPivot { row: 0 });
    }
    x[0] = rhs[0] / pivot;
    for i in 1..n {
        let sub = tau * off[i - 1];
        c[i - 1] = sub / pivot;
        pivot = sigma + tau * diag[i] - sub * c[i - 1];
        if pivot == 0.0 {
            return Err(SolveError::ZeroPivot { row: i });
        }
        x[i] = (rhs[i] - sub * x[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Symmetric positive definite band matrix with half-bandwidth `width`,
/// lower band stored row by row: entry `(i, i - k)` lives at `i * (width + 1) + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBand {
    dim: usize,
    width: usize,
    lower: Vec<f64>,
}

impl SymmetricBand {
    pub fn zeros(dim: usize, width: usize) -> Self {
        Self { dim, width, lower: vec![0.0; dim * (width + 1)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = i - j;
        if k > self.width {
            0.0
        } else {
            self.lower[i * (self.width + 1) + k]
        }
    }

    /// Sets `(i, j)` and, implicitly, `(j, i)`. Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = i - j;
        assert!(k <= self.width, "entry ({i}, {j}) outside band");
        self.lower[i * (self.width + 1) + k] = v;
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(self.width);
                let hi = (i + self.width + 1).min(n);
                (lo..hi).map(|j| self.get(i, j) * v[j]).sum()
            })
            .collect()
    }

    /// Solves `(sigma I + tau A) x = rhs` by band Cholesky.
    pub fn solve_shifted(
        &self,
        sigma: f64,
        tau: f64,
        rhs: &[f64],
    ) -> core::result::Result<Vec<f64>, SolveError> {
        let n = self.dim;
        let w = self.width;
        if rhs.len() != n {
            return Err(SolveError::DimensionMismatch { expected: n, found: rhs.len() });
        }
        let stride = w + 1;
        // l[i * stride + k] holds L(i, i - k)
        let mut l = vec![0.0; n * stride];
        for i in 0..n {
            for k in 0..=w.min(i) {
                l[i * stride + k] = tau * self.lower[i * stride + k];
            }
            l[i * stride] += sigma;
        }
        for j in 0..n {
            let lo = j.saturating_sub(w);
            let mut d = l[j * stride];
            for k in lo..j {
                let v = l[j * stride + (j - k)];
                d -= v * v;
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(SolveError::NotPositiveDefinite);
            }
            let ljj = sqrt(d);
            l[j * stride] = ljj;
            for i in (j + 1)..(j + w + 1).min(n) {
                let lo_i = i.saturating_sub(w).max(lo);
                let mut s = l[i * stride + (i - j)];
                for k in lo_i..j {
                    s -= l[i * stride + (i - k)] * l[j * stride + (j - k)];
                }
                l[i * stride + (i - j)] = s / ljj;
            }
        }
        let mut y = rhs.to_vec();
        for i in 0..n {
            let lo = i.saturating_sub(w);
            let mut s = y[i];
            for k in lo..i {
                s -= l[i * stride + (i - k)] * y[k];
            }
            y[i] = s / l[i * stride];
        }
        for i in (0..n).rev() {
            let hi = (i + w + 1).min(n);
            let mut s = y[i];
            for k in (i + 1)..hi {
                s -= l[k * stride + (k - i)] * y[k];
            }
            y[i] = s / l[i * stride];
        }
        Ok(y)
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off`, in ascending order (implicit QL with Wilkinson shifts).
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, found: off.len() });
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = fabs(d[m]) + fabs(d[m + 1]);
                if fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::RootNotBracketed);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { fabs(r) } else { -fabs(r) });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matrix whose columns are the
/// matching orthonormal eigenvectors.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = a.dim();
    let mut m = a.symmetrized();
    let mut v = DenseMatrix::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if sqrt(off) <= 1e-15 * scale * (n as f64) {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| m[(x, x)].total_cmp(&m[(y, y)]));
            let values = order.iter().map(|&k| m[(k, k)]).collect();
            let mut vectors = DenseMatrix::zeros(n);
            for (col, &k) in order.iter().enumerate() {
                for i in 0..n {
                    vectors[(i, col)] = v[(i, k)];
                }
            }
            return Ok((values, vectors));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + hypot(theta, 1.0))
                } else {
                    -1.0 / (-theta + hypot(theta, 1.0))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::RootNotBracketed)
}

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
pub fn symmetric_spectral_norm(a: &DenseMatrix) -> Result<f64> {
    let (values, _) = symmetric_eigen(a)?;
    Ok(values.iter().fold(0.0f64, |m, &v| m.max(fabs(v))))
}

pub fn norm2(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
