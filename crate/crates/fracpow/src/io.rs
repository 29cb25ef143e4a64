//! Text formats: dense matrices with a `dim lambda_min` header and one-value-per-line vectors.

use std::fs;
use std::path::Path;

use fracpow_core::linalg::DenseMatrix;

use crate::error::{Error, Result};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_owned(), line, message: message.into() }
}

fn parse_f64(path: &Path, line: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| parse_err(path, line, format!("not a number: `{tok}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err(path, line, format!("non-finite value: `{tok}`")))
    }
}

/// Whitespace-delimited row-major matrix preceded by a `dim lambda_min` line.
pub fn parse_dense_matrix(path: &Path, text: &str) -> Result<(DenseMatrix, f64)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let mut h = header.split_whitespace();
    let dim: usize = h
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err(path, hl + 1, "header must be `dim lambda_min`"))?;
    let lmin = match (h.next(), h.next()) {
        (Some(t), None) => parse_f64(path, hl + 1, t)?,
        _ => return Err(parse_err(path, hl + 1, "header must be `dim lambda_min`")),
    };
    let mut data = Vec::with_capacity(dim * dim);
    let mut last = hl + 1;
    for (i, line) in lines {
        last = i + 1;
        for tok in line.split_whitespace() {
            data.push(parse_f64(path, i + 1, tok)?);
        }
    }
    if data.len() != dim * dim {
        return Err(parse_err(
            path,
            last,
            format!("expected {} entries, found {}", dim * dim, data.len()),
        ));
    }
    Ok((DenseMatrix::from_row_major(dim, data)?, lmin))
}

pub fn read_dense_matrix(path: &Path) -> Result<(DenseMatrix, f64)> {
    parse_dense_matrix(path, &read(path)?)
}

/// One value per line; blank lines are skipped.
pub fn parse_vector(path: &Path, text: &str) -> Result<Vec<f64>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_f64(path, i + 1, l.trim()))
        .collect()
}

pub fn read_vector(path: &Path) -> Result<Vec<f64>> {
    parse_vector(path, &read(path)?)
}

/// Shortest text that parses back to the same `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:e}")
}

pub fn format_vector(v: &[f64]) -> String {
    let mut s = String::with_capacity(v.len() * 24);
    for x in v {
        s.push_str(&format_value(*x));
        s.push('\n');
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_owned(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        let p = Path::new("m.txt");
        let (m, l) = parse_dense_matrix(p, "2 0.5\n2 1\n1 2\n").unwrap();
        assert_eq!(l, 0.5);
        assert_eq!(m.as_slice(), &[2.0, 1.0, 1.0, 2.0]);
        assert!(parse_dense_matrix(p, "2 0.5\n2 1\n1\n").is_err());
        assert!(parse_dense_matrix(p, "2\n2 1\n1 2\n").is_err());
        assert!(parse_dense_matrix(p, "").is_err());
        assert!(parse_dense_matrix(p, "1 1\nnan\n").is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let p = Path::new("v.txt");
        let v = vec![1.0, -2.5e-300, 0.1, 3.0];
        assert_eq!(parse_vector(p, &format_vector(&v)).unwrap(), v);
        let err = parse_vector(p, "1\nx\n").unwrap_err().to_string();
        assert!(err.contains(":2:"), "{err}");
    }
}
