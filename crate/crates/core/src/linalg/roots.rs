//! Simultaneous (Durand–Kerner) iteration for all complex roots of a
//! polynomial, followed by a few Newton polishing steps per root.

use num_complex::Complex64;

use super::poly::RatPolynomial;
use super::LinalgError;

#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Relative step size at which the iteration is considered converged.
    pub tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self { max_iterations: 1000, tol: 1e-10 }
    }
}

/// Approximate roots with the worst scale-free residual among them.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residual: f64,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut pow = 1.0;
    for c in coeffs {
        scale += c.norm() * pow;
        pow *= r;
    }
    if scale == 0.0 {
        0.0
    } else {
        horner(coeffs, z).norm() / scale
    }
}

/// All roots of the polynomial with complex coefficients `coeffs`
/// (ascending degree, nonzero leading coefficient).
pub fn polynomial_roots(coeffs: &[Complex64], cfg: &RootConfig) -> Result<RootSet, LinalgError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(LinalgError::Domain("roots of the zero polynomial".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(LinalgError::Domain("non-finite polynomial coefficient".into()));
    }
    let lead = *coeffs.last().unwrap();
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    // Zero roots are split off exactly.
    let zeros = monic.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &monic[zeros..];
    let m = reduced.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(RootSet { roots, residual: 0.0 });
    }
    if m == 1 {
        roots.push(-reduced[0]);
        return Ok(RootSet { roots, residual: 0.0 });
    }

    // Initial points on a circle whose radius is the geometric mean of the
    // root moduli, rotated off the real axis so conjugate symmetry cannot
    // trap the iteration.
    let radius = reduced[0].norm().powf(1.0 / m as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / m as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.01 * k as f64 / m as f64), theta)
        })
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..m {
            let num = horner(reduced, z[i]);
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..m {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(f64::EPSILON, f64::EPSILON);
            }
            let step = num / den;
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step <= cfg.tol {
            converged = true;
            break;
        }
    }

    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(reduced, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let candidate = *zi - step;
            if relative_residual(reduced, candidate) <= relative_residual(reduced, *zi) {
                *zi = candidate;
            } else {
                break;
            }
        }
    }
    let residual = z.iter().map(|&zi| relative_residual(reduced, zi)).fold(0.0, f64::max);
    if !converged && residual > cfg.tol {
        return Err(LinalgError::NoConvergence { iterations, best_residual: residual });
    }
    roots.extend(z);
    debug_assert_eq!(roots.len(), n);
    Ok(RootSet { roots, residual })
}

/// Roots of a rational polynomial, repeated by multiplicity. The polynomial
/// is split exactly into squarefree parts first so every numeric solve only
/// sees simple roots.
pub fn roots_with_multiplicity(p: &RatPolynomial, cfg: &RootConfig) -> Result<RootSet, LinalgError> {
    let mut roots = Vec::new();
    let mut residual: f64 = 0.0;
    for (part, mult) in p.squarefree_decomposition()? {
        let set = polynomial_roots(&part.to_complex_coeffs(), cfg)?;
        residual = residual.max(set.residual);
        for _ in 0..mult {
            roots.extend_from_slice(&set.roots);
        }
    }
    Ok(RootSet { roots, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn golden_ratio_quadratic() {
        // x^2 - x - 1; quadratic formula oracle
        let set = polynomial_roots(&[c(-1.0), c(-1.0), c(1.0)], &RootConfig::default()).unwrap();
        let mut re: Vec<f64> = set.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        let s5 = 5f64.sqrt();
        assert!((re[0] - (1.0 - s5) / 2.0).abs() < 1e-12);
        assert!((re[1] - (1.0 + s5) / 2.0).abs() < 1e-12);
        assert!(set.roots.iter().all(|z| z.im.abs() < 1e-12));
    }

    #[test]
    fn purely_imaginary_pair() {
        // x^2 + 7
        let set = polynomial_roots(&[c(7.0), c(0.0), c(1.0)], &RootConfig::default()).unwrap();
        for z in set.roots {
            assert!(z.re.abs() < 1e-12);
            assert!((z.im.abs() - 7f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_roots_split_exactly() {
        let set = polynomial_roots(&[c(0.0), c(0.0), c(-2.0), c(1.0)], &RootConfig::default()).unwrap();
        assert_eq!(set.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = RootConfig { max_iterations: 1, tol: 1e-300 };
        let coeffs: Vec<Complex64> = (0..12).map(|i| c(1.0 + i as f64)).collect();
        match polynomial_roots(&coeffs, &cfg) {
            Err(LinalgError::NoConvergence { iterations, best_residual }) => {
                assert_eq!(iterations, 1);
                assert!(best_residual > 0.0);
            }
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn repeated_roots_keep_full_accuracy() {
        // (x - 1)^5 (x + 2)
        let p = &RatPolynomial::from_i64(&[-1, 1]).pow(5) * &RatPolynomial::from_i64(&[2, 1]);
        let set = roots_with_multiplicity(&p, &RootConfig::default()).unwrap();
        assert_eq!(set.roots.len(), 6);
        assert_eq!(set.roots.iter().filter(|z| (*z - c(1.0)).norm() < 1e-14).count(), 5);
    }
}
