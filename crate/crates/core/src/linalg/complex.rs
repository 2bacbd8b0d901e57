use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::ratio_to_f64;
use super::roots::{polynomial_roots, roots_with_multiplicity, RootConfig, RootSet};
use super::LinalgError;

/// Which reading of `A^τ` to use when forming `A·A^τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjugation {
    /// `A^τ = conj(A)`, entry by entry, no transpose.
    Entrywise,
    /// `A^τ = A^*`, the Hermitian adjoint.
    ConjugateTranspose,
}

impl Conjugation {
    pub const ALL: [Conjugation; 2] = [Conjugation::Entrywise, Conjugation::ConjugateTranspose];

    pub fn name(self) -> &'static str {
        match self {
            Conjugation::Entrywise => "entrywise",
            Conjugation::ConjugateTranspose => "conjugate-transpose",
        }
    }
}

impl std::str::FromStr for Conjugation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "entrywise" | "entrywise-conjugate" => Ok(Conjugation::Entrywise),
            "conjugate-transpose" | "adjoint" => Ok(Conjugation::ConjugateTranspose),
            other => Err(format!("unknown conjugation mode {other:?}")),
        }
    }
}

/// Dense row-major complex matrix in double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite { row: k / cols.max(1), col: k % cols.max(1) });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|v| Complex64::new(ratio_to_f64(v), 0.0)).collect(),
        }
    }

    /// Upper-triangular Jordan block with `lambda` on the diagonal and ones
    /// on the superdiagonal.
    pub fn jordan_block(lambda: Complex64, size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, lambda);
            if i + 1 < size {
                m.set(i, i + 1, Complex64::new(1.0, 0.0));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    /// `A^τ` under the given reading.
    pub fn tau(&self, mode: Conjugation) -> Self {
        match mode {
            Conjugation::Entrywise => self.conj(),
            Conjugation::ConjugateTranspose => self.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).norm() == 0.0))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).norm() == 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol * scale)
            })
    }

    /// Inverse by LU with partial pivoting.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a.get(x, col).norm().total_cmp(&a.get(y, col).norm()))
                .expect("non-empty range");
            if a.get(pivot, col).norm() <= 1e-300_f64.max(scale * f64::EPSILON * 1e-3) {
                return Err(LinalgError::Singular);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.data[col * n + j] /= p;
                inv.data[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let av = a.get(col, j);
                    let iv = inv.get(col, j);
                    a.data[r * n + j] -= f * av;
                    inv.data[r * n + j] -= f * iv;
                }
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial in floating point (Faddeev–LeVerrier),
    /// ascending coefficients.
    pub fn charpoly(&self) -> Result<Vec<Complex64>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        let mut m_k = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m_k;
            for i in 0..n {
                next.data[i * n + i] += coeffs[n - k + 1];
            }
            m_k = next;
            coeffs[n - k] = -(self * &m_k).trace() / k as f64;
        }
        Ok(coeffs)
    }

    /// Approximate eigenvalues.
    ///
    /// Triangular matrices return their diagonal. Real matrices are lifted
    /// exactly to rationals (every f64 is a dyadic rational) and go through
    /// the exact squarefree split. Hermitian matrices use cyclic Jacobi on
    /// the real symmetric embedding. Everything else falls back to
    /// Durand–Kerner on the floating characteristic polynomial.
    pub fn eigenvalues(&self, cfg: &RootConfig) -> Result<RootSet, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!(
                "eigenvalues of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RootSet { roots: Vec::new(), residual: 0.0 });
        }
        if self.is_upper_triangular() || self.is_lower_triangular() {
            return Ok(RootSet { roots: (0..n).map(|i| self.get(i, i)).collect(), residual: 0.0 });
        }
        if self.is_hermitian(0.0) {
            return Ok(RootSet {
                roots: hermitian_eigenvalues(self).into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
                residual: 0.0,
            });
        }
        if self.is_real() {
            let exact = RationalMatrix::new(
                n,
                n,
                self.data
                    .iter()
                    .map(|z| BigRational::from_float(z.re).expect("finite by construction"))
                    .collect(),
            )?;
            return roots_with_multiplicity(&exact.charpoly()?, cfg);
        }
        polynomial_roots(&self.charpoly()?, cfg)
    }

    pub fn spectral_radius(&self, cfg: &RootConfig) -> Result<f64, LinalgError> {
        Ok(super::max_modulus(&self.eigenvalues(cfg)?.roots))
    }
}

/// Eigenvalues of a Hermitian matrix, ascending. The complex Hermitian `H`
/// is embedded as the real symmetric `[[Re, -Im], [Im, Re]]`, whose spectrum
/// is that of `H` with every value doubled.
fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let mut eig = jacobi_symmetric(&mut a, m);
    eig.sort_by(f64::total_cmp);
    eig.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
fn jacobi_symmetric(a: &mut [f64], m: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum();
        let total: f64 = a.iter().map(|v| v * v).sum();
        if off <= f64::EPSILON * f64::EPSILON * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|i| a[i * m + i]).collect()
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes must agree");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes must agree");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
