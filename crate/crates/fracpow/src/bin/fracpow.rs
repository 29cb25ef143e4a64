use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use fracpow::io::{format_vector, read_vector, write_text};
use fracpow::parallel::apply;
use fracpow::{report, OperatorSpec};
use fracpow_core::plan::plan;
use fracpow_core::{build_rational, FractionalExponent, Operator, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rational approximation of negative fractional powers of operators.
#[derive(Debug, Parser)]
#[command(name = "fracpow", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Gauss-Laguerre nodes and weights as `j,theta,weight`.
    Nodes {
        #[arg(long)]
        n: usize,
    },
    /// Uniform error estimate for the n-point rule.
    Estimate {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
    },
    /// Smallest n whose estimate meets a tolerance.
    SelectN {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        tol: f64,
    },
    /// Scalar error and estimate at one lambda, n = 2..=nmax.
    ScalarError {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        lambda: f64,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Operator-norm error and estimate, n = 2..=nmax.
    MatrixError {
        #[arg(long, default_value = "diagpow:100:8")]
        op: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 60)]
        nmax: usize,
        #[arg(long, default_value = "full")]
        variant: String,
        /// Run the shifted solves concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Apply the rational approximation of L^{-alpha} to a vector.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "full")]
        variant: String,
        #[arg(long)]
        n: usize,
        /// Right-hand side, one value per line; a seeded random unit vector if omitted.
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Balanced, equalized and Sinc errors at matched solve counts.
    Compare {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "diagpow:100:8")]
        spectrum: String,
        #[arg(long, value_delimiter = ',', default_value = "11,21,41,81")]
        solves_list: Vec<usize>,
        #[arg(long, default_value_t = 2048)]
        nmax: usize,
    },
}

fn exponent(a: f64) -> anyhow::Result<FractionalExponent> {
    Ok(FractionalExponent::new(a)?)
}

fn random_unit(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

fn run(verb: Verb) -> anyhow::Result<String> {
    Ok(match verb {
        Verb::Nodes { n } => report::nodes_csv(n)?,
        Verb::Estimate { alpha, n } => report::estimate_csv(exponent(alpha)?, n)?,
        Verb::SelectN { alpha, tol } => report::select_n_csv(exponent(alpha)?, tol)?,
        Verb::ScalarError { alpha, lambda, nmax } => {
            report::scalar_error_csv(exponent(alpha)?, lambda, nmax)?
        }
        Verb::MatrixError { op, alpha, nmax, variant, parallel } => {
            let op = op.parse::<OperatorSpec>()?.build()?;
            let variant: Variant = variant.parse()?;
            report::matrix_error_csv(&op, exponent(alpha)?, nmax, variant, parallel)?
        }
        Verb::Apply { op, alpha, variant, n, rhs, seed, parallel } => {
            let op = op.parse::<OperatorSpec>()?.build()?;
            let alpha = exponent(alpha)?;
            let variant: Variant = variant.parse()?;
            let b = match rhs {
                Some(p) => read_vector(&p)?,
                None => random_unit(op.dimension(), seed),
            };
            if b.len() != op.dimension() {
                bail!("right-hand side has {} entries, operator dimension is {}", b.len(), op.dimension());
            }
            let form = build_rational(alpha, &plan(variant, n, alpha)?)?;
            format_vector(&apply(&op, &b, &form, parallel)?)
        }
        Verb::Compare { alpha, spectrum, solves_list, nmax } => {
            let op = spectrum.parse::<OperatorSpec>()?.build()?;
            let eigs = op
                .spectrum()
                .context("compare needs an operator with a known spectrum (diagpow, diag, fd1d, fd2d)")?;
            report::compare_csv(exponent(alpha)?, &eigs, &solves_list, nmax)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.verb).and_then(|text| match cli.out {
        Some(p) => Ok(write_text(&p, &text)?),
        None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
