use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::linalg::{Rational, RationalMatrix};
use crate::{Error, Result};

/// A homogeneous class: degree plus coordinates in the model basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl GradedVector {
    pub fn new(degree: usize, coords: Vec<Rational>) -> Self {
        Self { degree, coords }
    }

    pub fn zero(degree: usize, dim: usize) -> Self {
        Self { degree, coords: vec![Rational::zero(); dim] }
    }

    pub fn basis(degree: usize, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(degree, dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { degree: self.degree, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

/// One structure constant block: `v_i ∪ v_j` for `v_i ∈ H^k`, `v_j ∈ H^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupEntry {
    pub k: usize,
    pub l: usize,
    pub i: usize,
    pub j: usize,
    pub target: Vec<Rational>,
}

/// Raw ingredients of a model, as read from a file or assembled by a
/// constructor. Missing cup entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParts {
    pub n: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub cup: Vec<CupEntry>,
    pub integrate: Vec<Rational>,
    pub ample: Vec<Rational>,
    pub algebraic: Vec<Vec<usize>>,
    pub q: Option<u64>,
}

/// A graded cohomology ring with a chosen basis in every degree.
///
/// Construction only checks shapes. Ring axioms, duality and the algebraic
/// subspaces are checked by [`super::validate_model`].
#[derive(Clone, Debug)]
pub struct VarietyModel {
    n: usize,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    // tables[k * (2n+1) + l][i * d_l + j] = coordinates of v_i ∪ v_j in H^{k+l}
    tables: Vec<Vec<Vec<Rational>>>,
    integrate: Vec<Rational>,
    ample: Vec<Rational>,
    algebraic: Vec<Vec<usize>>,
    q: Option<u64>,
    duals: OnceLock<Vec<Option<RationalMatrix>>>,
    algebraic_duals: OnceLock<Vec<Option<RationalMatrix>>>,
}

impl PartialEq for VarietyModel {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dims == other.dims
            && self.labels == other.labels
            && self.tables == other.tables
            && self.integrate == other.integrate
            && self.ample == other.ample
            && self.algebraic == other.algebraic
            && self.q == other.q
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidModel(msg.into())
}

impl VarietyModel {
    pub fn from_parts(parts: ModelParts) -> Result<Self> {
        let ModelParts { n, dims, labels, cup, integrate, ample, algebraic, q } = parts;
        let top = 2 * n;
        if dims.len() != top + 1 {
            return Err(invalid(format!("expected {} graded dimensions, got {}", top + 1, dims.len())));
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &d)| l.len() != d) {
            return Err(invalid("basis labels do not match the graded dimensions"));
        }
        if integrate.len() != dims[top] {
            return Err(invalid(format!("integration functional has {} entries, H^{top} has dimension {}", integrate.len(), dims[top])));
        }
        let ample_dim = if n == 0 { 0 } else { dims[2] };
        if ample.len() != ample_dim {
            return Err(invalid(format!("ample class has {} entries, H^2 has dimension {ample_dim}", ample.len())));
        }
        if algebraic.len() != n + 1 {
            return Err(invalid(format!("expected {} algebraic subspaces, got {}", n + 1, algebraic.len())));
        }
        if q.is_some_and(|q| q < 2) {
            return Err(invalid("field size q must be at least 2"));
        }
        let width = top + 1;
        let mut tables = vec![Vec::new(); width * width];
        for k in 0..=top {
            for l in 0..=top - k {
                tables[k * width + l] = vec![vec![Rational::zero(); dims[k + l]]; dims[k] * dims[l]];
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in cup {
            if e.k + e.l > top {
                return Err(Error::Degree { k: e.k, l: e.l, top });
            }
            if e.i >= dims[e.k] || e.j >= dims[e.l] {
                return Err(invalid(format!("cup entry ({}, {}, {}, {}) indexes outside the basis", e.k, e.l, e.i, e.j)));
            }
            if e.target.len() != dims[e.k + e.l] {
                return Err(invalid(format!("cup entry ({}, {}, {}, {}) has {} target coordinates, expected {}", e.k, e.l, e.i, e.j, e.target.len(), dims[e.k + e.l])));
            }
            if !seen.insert((e.k, e.l, e.i, e.j)) {
                return Err(invalid(format!("duplicate cup entry ({}, {}, {}, {})", e.k, e.l, e.i, e.j)));
            }
            tables[e.k * width + e.l][e.i * dims[e.l] + e.j] = e.target;
        }
        Ok(Self { n, dims, labels, tables, integrate, ample, algebraic, q, duals: OnceLock::new(), algebraic_duals: OnceLock::new() })
    }

    /// Canonical parts: cup entries sorted by `(k, l, i, j)`, zero entries dropped.
    pub fn to_parts(&self) -> ModelParts {
        ModelParts {
            n: self.n,
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            cup: self.cup_entries(),
            integrate: self.integrate.clone(),
            ample: self.ample.clone(),
            algebraic: self.algebraic.clone(),
            q: self.q,
        }
    }

    pub fn cup_entries(&self) -> Vec<CupEntry> {
        let mut out = Vec::new();
        for k in 0..=self.top() {
            for l in 0..=self.top() - k {
                for i in 0..self.dims[k] {
                    for j in 0..self.dims[l] {
                        let t = self.cup_basis(k, l, i, j);
                        if t.iter().any(|c| !c.is_zero()) {
                            out.push(CupEntry { k, l, i, j, target: t.to_vec() });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> usize {
        2 * self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn integrate_functional(&self) -> &[Rational] {
        &self.integrate
    }

    pub fn ample(&self) -> GradedVector {
        GradedVector::new(2, self.ample.clone())
    }

    pub fn algebraic(&self, j: usize) -> &[usize] {
        &self.algebraic[j]
    }

    pub fn algebraic_all(&self) -> &[Vec<usize>] {
        &self.algebraic
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    /// Same ring with a different field size attached.
    pub fn with_q(&self, q: Option<u64>) -> Self {
        let mut m = self.clone();
        m.q = q;
        m
    }

    /// Same ring with different algebraic subspaces.
    pub fn with_algebraic(&self, algebraic: Vec<Vec<usize>>) -> Result<Self> {
        let mut parts = self.to_parts();
        parts.algebraic = algebraic;
        Self::from_parts(parts)
    }

    /// Coordinates of `v_i ∪ v_j` for basis vectors `v_i ∈ H^k`, `v_j ∈ H^l`.
    pub fn cup_basis(&self, k: usize, l: usize, i: usize, j: usize) -> &[Rational] {
        &self.tables[k * (self.top() + 1) + l][i * self.dims[l] + j]
    }

    pub fn cup_coords(&self, k: usize, a: &[Rational], l: usize, b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dims[k + l]];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai * bj;
                for (o, t) in out.iter_mut().zip(self.cup_basis(k, l, i, j)) {
                    if !t.is_zero() {
                        *o += &w * t;
                    }
                }
            }
        }
        out
    }

    pub fn cup(&self, a: &GradedVector, b: &GradedVector) -> Result<GradedVector> {
        if a.degree + b.degree > self.top() {
            return Err(Error::Degree { k: a.degree, l: b.degree, top: self.top() });
        }
        self.check_vector(a)?;
        self.check_vector(b)?;
        Ok(GradedVector::new(a.degree + b.degree, self.cup_coords(a.degree, &a.coords, b.degree, &b.coords)))
    }

    fn check_vector(&self, v: &GradedVector) -> Result<()> {
        if v.degree > self.top() || v.coords.len() != self.dims[v.degree] {
            return Err(invalid(format!(
                "class of degree {} with {} coordinates does not fit the model",
                v.degree,
                v.coords.len()
            )));
        }
        Ok(())
    }

    pub fn unit(&self) -> GradedVector {
        GradedVector::basis(0, self.dims[0], 0)
    }

    /// Integral of a top-degree class; zero in every other degree.
    pub fn integrate(&self, v: &GradedVector) -> Rational {
        if v.degree != self.top() {
            return Rational::zero();
        }
        v.coords.iter().zip(&self.integrate).map(|(a, b)| a * b).sum()
    }

    /// `∫ x ∪ y` for `x ∈ H^k`, `y ∈ H^{2n-k}`.
    pub fn pair(&self, k: usize, x: &[Rational], y: &[Rational]) -> Rational {
        let prod = self.cup_coords(k, x, self.top() - k, y);
        prod.iter().zip(&self.integrate).map(|(a, b)| a * b).sum()
    }

    /// `P[i][j] = ∫ v_i ∪ u_j` with `v` the basis of `H^k` and `u` of `H^{2n-k}`.
    pub fn pairing_matrix(&self, k: usize) -> RationalMatrix {
        let k2 = self.top() - k;
        let mut p = RationalMatrix::zeros(self.dims[k], self.dims[k2]);
        for i in 0..self.dims[k] {
            for j in 0..self.dims[k2] {
                let v: Rational =
                    self.cup_basis(k, k2, i, j).iter().zip(&self.integrate).map(|(a, b)| a * b).sum();
                p.set(i, j, v);
            }
        }
        p
    }

    /// Columns are the dual basis of `H^{2n-k}`: `P_k · W = I`.
    pub fn dual_matrix(&self, k: usize) -> Result<&RationalMatrix> {
        if k > self.top() {
            return Err(Error::Degree { k, l: 0, top: self.top() });
        }
        let duals = self.duals.get_or_init(|| {
            (0..=self.top()).map(|k| self.pairing_matrix(k).inverse().ok()).collect()
        });
        duals[k]
            .as_ref()
            .ok_or_else(|| invalid(format!("Poincaré pairing on H^{k} x H^{} is degenerate", self.top() - k)))
    }

    pub fn dual_basis(&self, k: usize) -> Result<Vec<GradedVector>> {
        let w = self.dual_matrix(k)?;
        let k2 = self.top() - k;
        Ok((0..w.cols()).map(|j| GradedVector::new(k2, w.column(j))).collect())
    }

    /// Pairing restricted to `A^j × A^{n-j}`.
    pub fn algebraic_pairing(&self, j: usize) -> RationalMatrix {
        self.pairing_matrix(2 * j).submatrix(&self.algebraic[j], &self.algebraic[self.n - j])
    }

    /// Inverse of [`Self::algebraic_pairing`]: columns are the dual basis
    /// of `A^{n-j}` inside the algebraic classes.
    pub fn algebraic_dual_matrix(&self, j: usize) -> Result<&RationalMatrix> {
        if j > self.n {
            return Err(Error::Degree { k: 2 * j, l: 0, top: self.top() });
        }
        let duals = self.algebraic_duals.get_or_init(|| {
            (0..=self.n).map(|j| self.algebraic_pairing(j).inverse().ok()).collect()
        });
        duals[j]
            .as_ref()
            .ok_or_else(|| invalid(format!("pairing A^{j} x A^{} is degenerate", self.n - j)))
    }

    /// `h^j`, with `h^0` the unit.
    pub fn ample_power(&self, j: usize) -> Result<GradedVector> {
        if j > self.n {
            return Err(Error::Degree { k: 2 * j, l: 0, top: self.top() });
        }
        let h = self.ample();
        let mut acc = self.unit();
        for _ in 0..j {
            acc = self.cup(&acc, &h)?;
        }
        Ok(acc)
    }
}
