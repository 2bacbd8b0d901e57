//! Exact rational matrices and polynomials, plus the double-precision
//! complex layer used for eigenvalue moduli.
//!
//! Everything that can be decided exactly (ranks, characteristic and
//! minimal polynomials, squarefreeness, Jordan block sizes) is computed over
//! `BigRational`. Numeric roots only ever feed moduli.

mod complex;
mod factor;
mod jordan;
mod matrix;
mod poly;
mod rational;
mod roots;

pub use complex::{ComplexMatrix, Conjugation};
pub use factor::factor_over_rationals;
pub use jordan::{jordan_profile, JordanFactor, JordanProfile};
pub use matrix::RationalMatrix;
pub use poly::RatPolynomial;
pub use rational::{format_rational, ln_rational, parse_rational, rat, ratio_to_f64, Rational};
pub use roots::{polynomial_roots, RootConfig, RootSet};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("matrix is singular")]
    Singular,
    #[error("root iteration did not converge after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("ambiguous eigenvalue attachment between factors {first} and {second}")]
    AmbiguousAttachment { first: String, second: String },
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev–LeVerrier recurrence.
pub fn charpoly(m: &RationalMatrix) -> Result<RatPolynomial, LinalgError> {
    m.charpoly()
}

pub fn minpoly(m: &RationalMatrix) -> Result<RatPolynomial, LinalgError> {
    m.minpoly()
}

/// True iff `gcd(p, p')` is a constant.
pub fn is_squarefree(p: &RatPolynomial) -> Result<bool, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::Domain("squarefree test of the zero polynomial".into()));
    }
    Ok(p.gcd(&p.derivative()).degree() == Some(0))
}

/// Approximate eigenvalues of a rational matrix.
///
/// The characteristic polynomial is split exactly into squarefree parts
/// first, so repeated eigenvalues come back with full accuracy.
pub fn eigenvalues_approx(m: &RationalMatrix, cfg: &RootConfig) -> Result<RootSet, LinalgError> {
    let chi = m.charpoly()?;
    roots::roots_with_multiplicity(&chi, cfg)
}

pub fn spectral_radius(m: &RationalMatrix, cfg: &RootConfig) -> Result<f64, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Dimension(format!(
            "spectral radius of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() == 0 {
        return Ok(0.0);
    }
    if m.is_upper_triangular() || m.is_lower_triangular() {
        return Ok((0..m.rows())
            .map(|i| ratio_to_f64(m.get(i, i)).abs())
            .fold(0.0, f64::max));
    }
    let roots = eigenvalues_approx(m, cfg)?;
    Ok(max_modulus(&roots.roots))
}

pub fn max_modulus(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
