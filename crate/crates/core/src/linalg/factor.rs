//! Factorization over the rationals for desk-scale polynomials.
//!
//! After an exact squarefree split, each part is scaled to a primitive
//! integer polynomial. Linear factors come from rounding real numeric roots
//! and verifying by exact division; higher-degree factors (up to degree 8)
//! come from searching subsets of numeric roots whose scaled product rounds
//! to an integer polynomial that divides exactly. Every reported factor is
//! verified exactly; a part with no factor found in the search bound is
//! reported irreducible, which is certified for parts of degree at most 17.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::poly::RatPolynomial;
use super::rational::Rational;
use super::roots::{polynomial_roots, RootConfig};
use super::LinalgError;

const MAX_FACTOR_DEGREE: usize = 8;

/// Irreducible monic factors with multiplicities; the product of
/// `factor^mult` equals `p.monic()`. Factors are sorted by degree, then by
/// coefficients, so the order is deterministic.
pub fn factor_over_rationals(p: &RatPolynomial) -> Result<Vec<(RatPolynomial, usize)>, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::Domain("factorization of the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition()? {
        for f in factor_squarefree(&part)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ma.cmp(mb))
    });
    Ok(out)
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_integer(p: &RatPolynomial) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> =
        p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn from_integers(c: &[BigInt]) -> RatPolynomial {
    RatPolynomial::new(c.iter().cloned().map(Rational::from_integer).collect())
}

fn round_to_bigint(x: f64) -> Option<BigInt> {
    if !x.is_finite() {
        return None;
    }
    BigInt::from_f64(x.round())
}

/// Candidate integer factor `round(lead * prod (x - z_i))`, reduced to
/// primitive form.
fn candidate_from_roots(lead: f64, roots: &[Complex64]) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![Complex64::new(lead, 0.0)];
    for &z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * z;
        }
        coeffs = next;
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    if coeffs.iter().any(|c| c.im.abs() > 1e-6 * scale) {
        return None;
    }
    let ints: Option<Vec<BigInt>> = coeffs.iter().map(|c| round_to_bigint(c.re)).collect();
    let ints = ints?;
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return None;
    }
    Some(ints.into_iter().map(|c| c / &g).collect())
}

fn factor_squarefree(p: &RatPolynomial) -> Result<Vec<RatPolynomial>, LinalgError> {
    let deg = p.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(if deg == 1 { vec![p.monic()] } else { Vec::new() });
    }
    let mut remaining = from_integers(&primitive_integer(p));
    let roots = polynomial_roots(&remaining.to_complex_coeffs(), &RootConfig::default())?.roots;
    let mut pool: Vec<Complex64> = roots;
    let mut factors = Vec::new();

    // Rational roots: x = a/b with b | lead, tried via rounding b*z.
    let lead_int = remaining.leading().to_integer();
    let lead_divisors = small_divisors(&lead_int);
    let mut i = 0;
    while i < pool.len() {
        let z = pool[i];
        let mut found = false;
        if z.im.abs() <= 1e-6 * z.norm().max(1.0) {
            for b in &lead_divisors {
                let bf = b.to_f64().unwrap_or(f64::INFINITY);
                let Some(a) = round_to_bigint(z.re * bf) else { continue };
                let root = Rational::new(a, b.clone());
                // (den * x - num) keeps the quotient integral
                let lin = RatPolynomial::new(vec![
                    Rational::from_integer(-root.numer().clone()),
                    Rational::from_integer(root.denom().clone()),
                ]);
                if let Some(q) = remaining.exact_div(&lin) {
                    remaining = q;
                    factors.push(RatPolynomial::linear(root));
                    pool.remove(i);
                    found = true;
                    break;
                }
            }
        }
        if !found {
            i += 1;
        }
    }

    // Higher-degree factors from root subsets.
    let mut size = 2;
    while size <= MAX_FACTOR_DEGREE && 2 * size <= pool.len() {
        let lead = remaining.leading().to_f64().unwrap_or(1.0);
        match find_subset_factor(&remaining, &pool, size, lead) {
            Some((idx, factor, quotient)) => {
                for &k in idx.iter().rev() {
                    pool.remove(k);
                }
                factors.push(factor.monic());
                remaining = quotient;
            }
            None => size += 1,
        }
    }
    if remaining.degree().unwrap_or(0) >= 1 {
        factors.push(remaining.monic());
    }
    Ok(factors)
}

fn find_subset_factor(
    remaining: &RatPolynomial,
    pool: &[Complex64],
    size: usize,
    lead: f64,
) -> Option<(Vec<usize>, RatPolynomial, RatPolynomial)> {
    let n = pool.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let sum_im: f64 = idx.iter().map(|&k| pool[k].im).sum();
        let scale = idx.iter().map(|&k| pool[k].norm()).fold(1.0, f64::max);
        if sum_im.abs() <= 1e-6 * scale * size as f64 {
            let subset: Vec<Complex64> = idx.iter().map(|&k| pool[k]).collect();
            if let Some(ints) = candidate_from_roots(lead, &subset) {
                let cand = from_integers(&ints);
                if cand.degree() == Some(size) {
                    if let Some(q) = remaining.exact_div(&cand) {
                        return Some((idx, cand, q));
                    }
                }
            }
        }
        // next combination in lexicographic order
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Positive divisors of |n| when |n| is small enough to enumerate; otherwise
/// just 1 and |n|.
fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    match n.to_u64() {
        Some(v) if v <= 1_000_000 => (1..=v).filter(|d| v % d == 0).map(BigInt::from).collect(),
        _ => vec![BigInt::one(), n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(factors: &[(RatPolynomial, usize)]) -> RatPolynomial {
        factors.iter().fold(RatPolynomial::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_over_rationals(&RatPolynomial::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(
            f,
            vec![(RatPolynomial::from_i64(&[-1, 1]), 1), (RatPolynomial::from_i64(&[1, 1]), 1)]
        );
    }

    #[test]
    fn sum_of_squares_is_irreducible() {
        let p = RatPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(factor_over_rationals(&p).unwrap(), vec![(p, 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(3x + 2)(x^2 + x + 1)
        let p = &(&RatPolynomial::from_i64(&[-1, 2]) * &RatPolynomial::from_i64(&[2, 3]))
            * &RatPolynomial::from_i64(&[1, 1, 1]);
        let f = factor_over_rationals(&p).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(product(&f), p.monic());
    }

    #[test]
    fn frobenius_like_quartic_splits_into_quadratics() {
        // (x^2 - 3x + 5)(x^2 + 2x + 5)
        let a = RatPolynomial::from_i64(&[5, -3, 1]);
        let b = RatPolynomial::from_i64(&[5, 2, 1]);
        let f = factor_over_rationals(&(&a * &b)).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&(a, 1)) && f.contains(&(b, 1)));
    }

    #[test]
    fn zero_is_a_domain_error() {
        assert!(matches!(factor_over_rationals(&RatPolynomial::zero()), Err(LinalgError::Domain(_))));
    }
}
