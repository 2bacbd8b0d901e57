//! Jordan block structure over the rationals.
//!
//! For each irreducible factor `g` of the characteristic polynomial, the
//! number of blocks of size at least `k` attached to `g` is
//! `(rank g(M)^{k-1} - rank g(M)^k) / deg g`, so block sizes come out of an
//! exact rank sequence. Moduli are the only numeric ingredient.

use serde::Serialize;

use super::factor::factor_over_rationals;
use super::matrix::RationalMatrix;
use super::poly::RatPolynomial;
use super::roots::{polynomial_roots, RootConfig};
use super::LinalgError;

/// Relative tolerance for deciding that a factor sits at the maximal modulus.
pub const MAX_MODULUS_RTOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanFactor {
    #[serde(serialize_with = "serialize_poly")]
    pub factor: RatPolynomial,
    /// Block sizes in non-increasing order.
    pub block_sizes: Vec<usize>,
    /// Moduli of the factor's complex roots.
    pub moduli: Vec<f64>,
}

impl JordanFactor {
    pub fn max_block(&self) -> usize {
        self.block_sizes.first().copied().unwrap_or(0)
    }

    pub fn max_modulus(&self) -> f64 {
        self.moduli.iter().copied().fold(0.0, f64::max)
    }
}

fn serialize_poly<S: serde::Serializer>(p: &RatPolynomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanProfile {
    pub factors: Vec<JordanFactor>,
    pub max_modulus: f64,
    pub max_block_at_max_modulus: usize,
}

impl JordanProfile {
    pub fn dimension(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.factor.degree().unwrap_or(0) * f.block_sizes.iter().sum::<usize>())
            .sum()
    }

    pub fn all_blocks_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.block_sizes.iter().all(|&b| b == 1))
    }
}

/// Exact block sizes for the factor `g` of multiplicity `mult`.
fn block_sizes(m: &RationalMatrix, g: &RatPolynomial, mult: usize) -> Vec<usize> {
    let n = m.rows();
    let deg = g.degree().unwrap_or(0);
    let target = n - deg * mult;
    let gm = g.eval_matrix(m);
    let mut ranks = vec![n];
    let mut power = gm.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == target || ranks.len() > mult + 1 {
            break;
        }
        power = &power * &gm;
    }
    // at_least[k-1] = number of blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / deg).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exact));
    }
    sizes
}

pub fn jordan_profile(m: &RationalMatrix, cfg: &RootConfig) -> Result<JordanProfile, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::Dimension(format!(
            "Jordan profile of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() == 0 {
        return Ok(JordanProfile { factors: Vec::new(), max_modulus: 0.0, max_block_at_max_modulus: 0 });
    }
    let mut factors = Vec::new();
    let mut all_roots = Vec::new();
    for (g, mult) in factor_over_rationals(&m.charpoly()?)? {
        let roots = polynomial_roots(&g.to_complex_coeffs(), cfg)?.roots;
        all_roots.push((g.clone(), roots.clone()));
        factors.push(JordanFactor {
            block_sizes: block_sizes(m, &g, mult),
            moduli: roots.iter().map(|z| z.norm()).collect(),
            factor: g,
        });
    }
    check_attachment(&all_roots, cfg.tol)?;

    let max_modulus = factors.iter().map(JordanFactor::max_modulus).fold(0.0, f64::max);
    let threshold = max_modulus * (1.0 - MAX_MODULUS_RTOL);
    let max_block_at_max_modulus = factors
        .iter()
        .filter(|f| f.max_modulus() >= threshold)
        .map(JordanFactor::max_block)
        .max()
        .unwrap_or(0);
    Ok(JordanProfile { factors, max_modulus, max_block_at_max_modulus })
}

/// Distinct irreducible factors share no roots, so two numerically
/// coincident roots from different factors mean the moduli cannot be
/// attached reliably.
fn check_attachment(
    roots: &[(RatPolynomial, Vec<num_complex::Complex64>)],
    tol: f64,
) -> Result<(), LinalgError> {
    for (a, (ga, ra)) in roots.iter().enumerate() {
        for (gb, rb) in &roots[a + 1..] {
            for za in ra {
                for zb in rb {
                    if (za - zb).norm() <= tol * za.norm().max(zb.norm()).max(1.0) {
                        return Err(LinalgError::AmbiguousAttachment {
                            first: ga.to_string(),
                            second: gb.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn profile(m: &RationalMatrix) -> JordanProfile {
        jordan_profile(m, &RootConfig::default()).unwrap()
    }

    #[test]
    fn diagonal_has_trivial_blocks() {
        let p = profile(&RationalMatrix::diagonal(&[rat(1, 1), rat(2, 1)]));
        assert_eq!(p.factors.len(), 2);
        assert!(p.all_blocks_trivial());
        assert_eq!(p.max_block_at_max_modulus, 1);
        assert!((p.max_modulus - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constructed_jordan_blocks() {
        let m = RationalMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = profile(&m);
        assert_eq!(p.factors.len(), 1);
        assert_eq!(p.factors[0].block_sizes, vec![2, 1]);
        assert_eq!(p.max_block_at_max_modulus, 2);
        assert_eq!(p.dimension(), 3);
    }

    #[test]
    fn companion_of_squared_irreducible() {
        // companion of (x^2+1)^2 is cyclic: one block of size 2 for x^2+1.
        // Rank oracle: g(C) has rank 2, g(C)^2 = 0.
        let g = RatPolynomial::from_i64(&[1, 0, 1]);
        let c = RationalMatrix::companion(&g.pow(2)).unwrap();
        let gc = g.eval_matrix(&c);
        assert_eq!(gc.rank(), 2);
        assert!((&gc * &gc).is_zero());
        let p = profile(&c);
        assert_eq!(p.factors[0].block_sizes, vec![2]);
        assert_eq!(p.dimension(), 4);
        // the block-diagonal sum of two 2x2 rotations is semisimple instead
        let r = RationalMatrix::companion(&g).unwrap();
        let p2 = profile(&RationalMatrix::block_diagonal(&[r.clone(), r]));
        assert_eq!(p2.factors[0].block_sizes, vec![1, 1]);
    }

    #[test]
    fn block_at_max_modulus_ignores_smaller_eigenvalues() {
        // J(1,3) ⊕ (2)
        let m = RationalMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]]);
        let p = profile(&m);
        assert_eq!(p.max_block_at_max_modulus, 1);
        let n = RationalMatrix::from_i64(&[&[-2, 1, 0], &[0, -2, 0], &[0, 0, 2]]);
        assert_eq!(profile(&n).max_block_at_max_modulus, 2);
    }
}
