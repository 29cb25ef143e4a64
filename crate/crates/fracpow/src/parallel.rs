//! Concurrent shifted solves with deterministic accumulation.

use fracpow_core::linalg::DenseMatrix;
use fracpow_core::operator::{accumulate, postfactor, shifted_terms, solve_term, DENSE_CAP};
use fracpow_core::{apply_fractional_inverse, Error, Operator, RationalForm};
use rayon::prelude::*;

/// Same result as [`apply_fractional_inverse`], bit for bit, with the solves
/// spread over the rayon pool unless the operator declares itself serial.
pub fn apply_parallel<O: Operator + Sync + ?Sized>(
    op: &O,
    b: &[f64],
    form: &RationalForm,
) -> fracpow_core::Result<Vec<f64>> {
    if !op.concurrent_solves() {
        return apply_fractional_inverse(op, b, form);
    }
    if b.len() != op.dimension() {
        return Err(Error::DimensionMismatch { expected: op.dimension(), found: b.len() });
    }
    let lmin = op.lambda_min();
    let terms = shifted_terms(form, lmin)?;
    let post = postfactor(lmin, form.alpha());
    let solutions = terms
        .par_iter()
        .map(|t| solve_term(op, t, b))
        .collect::<fracpow_core::Result<Vec<_>>>()?;
    Ok(accumulate(&terms, &solutions, post))
}

/// Applies `R(L)` serially or concurrently.
pub fn apply<O: Operator + Sync + ?Sized>(
    op: &O,
    b: &[f64],
    form: &RationalForm,
    parallel: bool,
) -> fracpow_core::Result<Vec<f64>> {
    if parallel {
        apply_parallel(op, b, form)
    } else {
        apply_fractional_inverse(op, b, form)
    }
}

/// Column `j` is `R(L) e_j`.
pub fn materialize<O: Operator + Sync + ?Sized>(
    op: &O,
    form: &RationalForm,
    parallel: bool,
) -> fracpow_core::Result<DenseMatrix> {
    let n = op.dimension();
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { dimension: n, cap: DENSE_CAP });
    }
    let mut out = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        out.set_column(j, &apply(op, &e, form, parallel)?);
    }
    Ok(out)
}
