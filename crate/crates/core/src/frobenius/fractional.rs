//! `F^s = U D^s U^{-1}` for semisimple actions.
//!
//! Eigenvalues come from the exact factorization of the characteristic
//! polynomial, so each numeric eigenvalue is a simple root of its
//! irreducible factor and its multiplicity is known exactly. The eigenspace
//! is then the numeric null space of `M - λI` of that known dimension.

use num_complex::Complex64;
use serde::Serialize;

use crate::correspondence::CorrespondenceAction;
use crate::linalg::{factor_over_rationals, polynomial_roots, ComplexMatrix, RationalMatrix, RootConfig};
use crate::spectral::is_semisimple;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalConfig {
    pub tol: f64,
    /// Largest accepted 1-norm condition number of `U`.
    pub max_condition: f64,
    pub roots: RootConfig,
}

impl Default for FractionalConfig {
    fn default() -> Self {
        Self { tol: 1e-8, max_condition: 1e8, roots: RootConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionalPower {
    pub degree: usize,
    pub exponent: f64,
    #[serde(skip)]
    pub matrix: ComplexMatrix,
    #[serde(skip)]
    pub eigenvalues: Vec<Complex64>,
    #[serde(skip)]
    pub powered: Vec<Complex64>,
    pub branch: &'static str,
    pub condition_number: f64,
    /// Max entry gap to the exact power when `s` is an integer.
    pub integer_gap: Option<f64>,
}

/// `λ^s = exp(s log λ)` on the principal branch, with `arg = π` on the
/// negative real axis (a signed zero imaginary part does not flip it).
pub fn principal_power(lambda: Complex64, s: f64) -> Result<Complex64> {
    if lambda.norm() == 0.0 {
        return match s {
            s if s > 0.0 => Ok(Complex64::new(0.0, 0.0)),
            0.0 => Ok(Complex64::new(1.0, 0.0)),
            _ => Err(Error::Spec("negative power of a singular action".into())),
        };
    }
    let mut theta = lambda.arg();
    if lambda.im == 0.0 && lambda.re < 0.0 {
        theta = std::f64::consts::PI;
    }
    Ok(Complex64::from_polar(lambda.norm().powf(s), s * theta))
}

/// Null space of dimension `nullity` by Gauss–Jordan with full pivoting.
fn null_space(a: &ComplexMatrix, nullity: usize) -> Vec<Vec<Complex64>> {
    let n = a.cols();
    let rank = n - nullity;
    let mut m: Vec<Vec<Complex64>> = a.to_rows();
    let mut perm: Vec<usize> = (0..n).collect();
    for step in 0..rank {
        let (mut pi, mut pj, mut best) = (step, step, -1.0);
        for (i, row) in m.iter().enumerate().skip(step) {
            for (j, v) in row.iter().enumerate().skip(step) {
                if v.norm() > best {
                    best = v.norm();
                    pi = i;
                    pj = j;
                }
            }
        }
        m.swap(step, pi);
        for row in m.iter_mut() {
            row.swap(step, pj);
        }
        perm.swap(step, pj);
        let p = m[step][step];
        for v in m[step].iter_mut() {
            *v /= p;
        }
        let pivot_row = m[step].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == step {
                continue;
            }
            let f = row[step];
            if f.norm() == 0.0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
    }
    (rank..n)
        .map(|free| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[perm[free]] = Complex64::new(1.0, 0.0);
            for i in 0..rank {
                v[perm[i]] = -m[i][free];
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter().map(|z| z / norm).collect()
        })
        .collect()
}

/// Numeric eigendecomposition `(U, eigenvalues)` of an exactly semisimple
/// rational matrix.
fn eigendecomposition(m: &RationalMatrix, cfg: &RootConfig) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    let n = m.rows();
    let mc = ComplexMatrix::from_rational(m);
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for (g, mult) in factor_over_rationals(&m.charpoly()?)? {
        for lambda in polynomial_roots(&g.to_complex_coeffs(), cfg)?.roots {
            let shifted = &mc - &ComplexMatrix::identity(n).scale(lambda);
            for v in null_space(&shifted, mult) {
                columns.push(v);
                values.push(lambda);
            }
        }
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            u.set(i, j, *v);
        }
    }
    Ok((u, values))
}

/// Exact `M_k^m` for integer `m`, negative powers through the inverse.
pub fn exact_power(f: &CorrespondenceAction, k: usize, m: i64) -> Result<RationalMatrix> {
    Ok(f.matrix(k).pow_signed(m)?)
}

pub fn fractional_power(f: &CorrespondenceAction, k: usize, s: f64, cfg: &FractionalConfig) -> Result<FractionalPower> {
    if !s.is_finite() {
        return Err(Error::Spec(format!("exponent {s} is not finite")));
    }
    if !is_semisimple(f, k)? {
        return Err(Error::NotSemisimple { degree: k });
    }
    let m = f.matrix(k);
    let n = m.rows();
    if n == 0 {
        return Ok(FractionalPower {
            degree: k,
            exponent: s,
            matrix: ComplexMatrix::zeros(0, 0),
            eigenvalues: vec![],
            powered: vec![],
            branch: "principal",
            condition_number: 1.0,
            integer_gap: None,
        });
    }
    let (u, eigenvalues) = eigendecomposition(m, &cfg.roots)?;
    let u_inv = u.inverse().map_err(|_| Error::IllConditioned { degree: k, condition: f64::INFINITY })?;
    let condition = u.norm_1() * u_inv.norm_1();
    if condition.is_nan() || condition > cfg.max_condition {
        return Err(Error::IllConditioned { degree: k, condition });
    }
    let powered = eigenvalues.iter().map(|&l| principal_power(l, s)).collect::<Result<Vec<_>>>()?;
    let mut d = ComplexMatrix::zeros(n, n);
    for (i, p) in powered.iter().enumerate() {
        d.set(i, i, *p);
    }
    let matrix = &(&u * &d) * &u_inv;

    let integer_gap = if s.fract() == 0.0 && s.abs() <= 64.0 {
        let exact = ComplexMatrix::from_rational(&exact_power(f, k, s as i64)?);
        let gap = matrix.max_abs_diff(&exact);
        let scale = exact.max_abs().max(1.0);
        if gap > cfg.tol * condition * scale {
            return Err(Error::IllConditioned { degree: k, condition });
        }
        Some(gap)
    } else {
        None
    };
    Ok(FractionalPower {
        degree: k,
        exponent: s,
        matrix,
        eigenvalues,
        powered,
        branch: "principal",
        condition_number: condition,
        integer_gap,
    })
}
