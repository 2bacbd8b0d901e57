use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::{ratio_to_f64, Rational};
use super::LinalgError;

/// Univariate polynomial over the rationals, coefficients in ascending degree.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and every other polynomial has a nonzero leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), LinalgError> {
        let dd = divisor
            .degree()
            .ok_or_else(|| LinalgError::Domain("division by the zero polynomial".into()))?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: `self = lead * prod s_i^i` with each `s_i` monic,
    /// squarefree and pairwise coprime. Trivial parts are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::Domain("squarefree decomposition of zero".into()));
        }
        let f = self.monic();
        let mut out = Vec::new();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fp.exact_div(&a).expect("gcd divides");
        let mut i = 1;
        loop {
            let d = &c - &b.derivative();
            if b.degree() == Some(0) {
                break;
            }
            let g = b.gcd(&d);
            if g.degree() != Some(0) {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = d.exact_div(&g).expect("gcd divides");
            i += 1;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &RationalMatrix) -> RationalMatrix {
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &RationalMatrix::identity(n).scale(c);
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(ratio_to_f64(c), 0.0)).collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + ratio_to_f64(c);
        }
        acc
    }

    /// `|p(z)|` divided by `sum |c_i| |z|^i`, a scale-free residual.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut scale = 0.0;
        let mut pow = 1.0;
        for c in &self.coeffs {
            scale += ratio_to_f64(c).abs() * pow;
            pow *= r;
        }
        if scale == 0.0 {
            0.0
        } else {
            self.eval_complex(z).norm() / scale
        }
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;
    fn neg(self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn display_reads_naturally() {
        let p = RatPolynomial::new(vec![rat(1, 4), rat(-1, 1), rat(1, 1)]);
        assert_eq!(p.to_string(), "x^2 - x + 1/4");
        assert_eq!(RatPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = RatPolynomial::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = RatPolynomial::from_i64(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, RatPolynomial::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        let c = RatPolynomial::from_i64(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), b);
        assert!(a.div_rem(&RatPolynomial::zero()).is_err());
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let x1 = RatPolynomial::from_i64(&[-1, 1]);
        let x2 = RatPolynomial::from_i64(&[1, 0, 1]);
        let p = &(&x1.pow(3) * &x2.pow(2)) * &RatPolynomial::from_i64(&[5, 1]);
        let mut sf = p.squarefree_decomposition().unwrap();
        sf.sort_by_key(|(_, m)| *m);
        assert_eq!(sf.len(), 3);
        assert_eq!(sf[0], (RatPolynomial::from_i64(&[5, 1]), 1));
        assert_eq!(sf[1], (x2, 2));
        assert_eq!(sf[2], (x1, 3));
    }
}
