//! Correspondences as graded pullback actions `M_k : H^k → H^k`.
//!
//! Composition is contravariant: `compose(f, g)` is the action of `f ∘ g`,
//! whose pullback is `g^* ∘ f^*`, so its matrix in degree `k` is
//! `M_k(g) · M_k(f)`. Iterates are plain matrix powers, which models the
//! algebraically stable setting.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cohomology::VarietyModel;
use crate::linalg::{format_rational, ln_rational, Rational, RationalMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceAction {
    model: Arc<VarietyModel>,
    matrices: Vec<RationalMatrix>,
    is_ring_map: bool,
    polarization: Option<Rational>,
}

/// Exact norms of one action.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormTable {
    /// `‖f^*|H^k‖` for `k = 0..=2n`, as `"num/den"`.
    pub h: Vec<String>,
    /// `‖f^*|N^j‖` for `j = 0..=n`.
    pub n: Vec<String>,
    /// `deg_j(f) = ∫ f^*(h^j) ∪ h^{n-j}`.
    pub deg: Vec<String>,
}

/// Norms of the iterates `t = 1..=T` with their `t`-th roots.
#[derive(Clone, Debug, PartialEq)]
pub struct IterateSequence {
    pub norms: Vec<Rational>,
    pub roots: Vec<f64>,
}

impl IterateSequence {
    fn from_norms(norms: Vec<Rational>) -> Self {
        let roots = norms
            .iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { 0.0 } else { (ln_rational(v) / (i + 1) as f64).exp() })
            .collect();
        Self { norms, roots }
    }

    pub fn last_root(&self) -> f64 {
        self.roots.last().copied().unwrap_or(0.0)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidAction(msg.into())
}

/// Dual-basis L1 norm of `m` acting on `H^k`:
/// `Σ_{i,j} |∫ (M v_i) ∪ w_j|` with `w` the dual basis of `v`.
pub fn dual_l1_norm(model: &VarietyModel, k: usize, m: &RationalMatrix) -> Result<Rational> {
    let p = model.pairing_matrix(k);
    let w = model.dual_matrix(k)?;
    let x = &(&m.transpose() * &p) * w;
    Ok(x.entry_l1())
}

/// The same recipe inside `A^j` with the pairing induced on `A^j × A^{n-j}`.
pub fn algebraic_l1_norm(model: &VarietyModel, j: usize, restricted: &RationalMatrix) -> Result<Rational> {
    let p = model.algebraic_pairing(j);
    let w = model.algebraic_dual_matrix(j)?;
    let x = &(&restricted.transpose() * &p) * w;
    Ok(x.entry_l1())
}

impl CorrespondenceAction {
    /// Validates shapes, the algebraic subspaces, the ring-map condition and
    /// the polarization, all exactly.
    pub fn new(
        model: Arc<VarietyModel>,
        matrices: Vec<RationalMatrix>,
        is_ring_map: bool,
        polarization: Option<Rational>,
    ) -> Result<Self> {
        let top = model.top();
        if matrices.len() != top + 1 {
            return Err(bad(format!("expected {} degree matrices, got {}", top + 1, matrices.len())));
        }
        for (k, m) in matrices.iter().enumerate() {
            let d = model.dim(k);
            if m.rows() != d || m.cols() != d {
                return Err(bad(format!("M_{k} is {}x{}, H^{k} has dimension {d}", m.rows(), m.cols())));
            }
        }
        for k in 0..=top {
            model.dual_matrix(k)?;
        }
        for j in 0..=model.n() {
            model.algebraic_dual_matrix(j)?;
            let a = model.algebraic(j);
            let m = &matrices[2 * j];
            for &s in a {
                for i in (0..model.dim(2 * j)).filter(|i| !a.contains(i)) {
                    if !m.get(i, s).is_zero() {
                        return Err(bad(format!(
                            "M_{} moves algebraic basis vector {s} out of A^{j} (coefficient on {i})",
                            2 * j
                        )));
                    }
                }
            }
        }
        if is_ring_map {
            if matrices[0] != RationalMatrix::identity(1) {
                return Err(bad("a ring map must act as the identity on H^0"));
            }
            check_multiplicative(&model, &matrices)?;
        }
        if let Some(a) = &polarization {
            if *a <= Rational::one() {
                return Err(bad(format!("polarization {} must exceed 1", format_rational(a))));
            }
            if model.n() == 0 {
                return Err(bad("a point has no ample class"));
            }
            let h = model.ample().coords;
            let image = matrices[2].apply(&h);
            let expected: Vec<Rational> = h.iter().map(|c| c * a).collect();
            if image != expected {
                return Err(bad(format!("M_2 h is not {} h", format_rational(a))));
            }
        }
        Ok(Self { model, matrices, is_ring_map, polarization })
    }

    pub fn identity(model: Arc<VarietyModel>) -> Self {
        let matrices = model.dims().iter().map(|&d| RationalMatrix::identity(d)).collect();
        Self { model, matrices, is_ring_map: true, polarization: None }
    }

    /// Scalar `c_k` on each `H^k`.
    pub fn scalars(model: Arc<VarietyModel>, scalars: &[Rational], is_ring_map: bool, polarization: Option<Rational>) -> Result<Self> {
        if scalars.len() != model.top() + 1 {
            return Err(bad(format!("expected {} scalars, got {}", model.top() + 1, scalars.len())));
        }
        let matrices = model.dims().iter().zip(scalars).map(|(&d, c)| RationalMatrix::identity(d).scale(c)).collect();
        Self::new(model, matrices, is_ring_map, polarization)
    }

    /// A random action with integer entries in `[-bound, bound]`, block
    /// diagonal with respect to `A^j` and its complementary coordinates.
    /// Keeping both pieces invariant is what lets the transpose keep the
    /// algebraic subspaces too. Not a ring map.
    pub fn random<R: Rng + ?Sized>(model: Arc<VarietyModel>, rng: &mut R, bound: i64) -> Self {
        let mut matrices = Vec::with_capacity(model.top() + 1);
        for k in 0..=model.top() {
            let d = model.dim(k);
            let alg: &[usize] = if k % 2 == 0 { model.algebraic(k / 2) } else { &[] };
            let mut m = RationalMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    if alg.contains(&j) != alg.contains(&i) {
                        continue;
                    }
                    m.set(i, j, Rational::from_integer(rng.random_range(-bound..=bound).into()));
                }
            }
            matrices.push(m);
        }
        Self::new(model, matrices, false, None).expect("random action keeps the algebraic subspaces")
    }

    pub fn model(&self) -> &Arc<VarietyModel> {
        &self.model
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, k: usize) -> &RationalMatrix {
        &self.matrices[k]
    }

    pub fn is_ring_map(&self) -> bool {
        self.is_ring_map
    }

    pub fn polarization(&self) -> Option<&Rational> {
        self.polarization.as_ref()
    }

    /// `M_{2j}` restricted to `A^j`.
    pub fn restricted(&self, j: usize) -> RationalMatrix {
        let a = self.model.algebraic(j);
        self.matrices[2 * j].submatrix(a, a)
    }

    pub fn norm_h(&self, k: usize) -> Rational {
        dual_l1_norm(&self.model, k, &self.matrices[k]).expect("pairings checked at construction")
    }

    pub fn norm_n(&self, j: usize) -> Rational {
        algebraic_l1_norm(&self.model, j, &self.restricted(j)).expect("pairings checked at construction")
    }

    /// `∫ M_{2j}(h^j) ∪ h^{n-j}`.
    pub fn deg(&self, j: usize) -> Rational {
        let m = &self.model;
        let hj = m.ample_power(j).expect("j <= n");
        let hc = m.ample_power(m.n() - j).expect("j <= n");
        let image = self.matrices[2 * j].apply(&hj.coords);
        m.pair(2 * j, &image, &hc.coords)
    }

    pub fn norm_table(&self) -> NormTable {
        let n = self.model.n();
        NormTable {
            h: (0..=self.model.top()).map(|k| format_rational(&self.norm_h(k))).collect(),
            n: (0..=n).map(|j| format_rational(&self.norm_n(j))).collect(),
            deg: (0..=n).map(|j| format_rational(&self.deg(j))).collect(),
        }
    }

    /// Poincaré-pairing adjoint: `∫ f_τ^*(x) ∪ y = ∫ x ∪ f^*(y)` for
    /// `x ∈ H^{2n-k}`, `y ∈ H^k`.
    pub fn transpose(&self) -> Result<Self> {
        let top = self.model.top();
        let mut out = vec![RationalMatrix::zeros(0, 0); top + 1];
        for k in 0..=top {
            let q = self.model.pairing_matrix(top - k);
            let q_inv_t = q.inverse()?.transpose();
            out[top - k] = &(&q_inv_t * &self.matrices[k].transpose()) * &q.transpose();
        }
        Self::new(self.model.clone(), out, false, None)
    }

    /// Action of `f ∘ g`: degreewise `M(g) · M(f)`.
    pub fn compose(f: &Self, g: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&f.model, &g.model) && f.model != g.model {
            return Err(Error::ModelMismatch);
        }
        let matrices = f.matrices.iter().zip(&g.matrices).map(|(mf, mg)| mg * mf).collect();
        let polarization = match (&f.polarization, &g.polarization) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        Ok(Self { model: f.model.clone(), matrices, is_ring_map: f.is_ring_map && g.is_ring_map, polarization })
    }

    /// The `t`-th iterate.
    pub fn pow(&self, t: u32) -> Self {
        Self {
            model: self.model.clone(),
            matrices: self.matrices.iter().map(|m| m.pow(t)).collect(),
            is_ring_map: self.is_ring_map,
            polarization: self.polarization.as_ref().map(|a| num_traits::pow(a.clone(), t as usize)),
        }
    }

    pub fn iterate_norms_h(&self, k: usize, t_max: usize) -> IterateSequence {
        let m = &self.matrices[k];
        let mut power = m.clone();
        let mut norms = Vec::with_capacity(t_max);
        for t in 1..=t_max {
            if t > 1 {
                power = &power * m;
            }
            norms.push(dual_l1_norm(&self.model, k, &power).expect("pairings checked at construction"));
        }
        IterateSequence::from_norms(norms)
    }

    pub fn iterate_norms_n(&self, j: usize, t_max: usize) -> IterateSequence {
        let m = self.restricted(j);
        let mut power = m.clone();
        let mut norms = Vec::with_capacity(t_max);
        for t in 1..=t_max {
            if t > 1 {
                power = &power * &m;
            }
            norms.push(algebraic_l1_norm(&self.model, j, &power).expect("pairings checked at construction"));
        }
        IterateSequence::from_norms(norms)
    }
}

/// `M(v_i ∪ v_j) = M v_i ∪ M v_j` on all basis pairs.
fn check_multiplicative(model: &VarietyModel, matrices: &[RationalMatrix]) -> Result<()> {
    let top = model.top();
    for k in 0..=top {
        for l in 0..=top - k {
            for i in 0..model.dim(k) {
                let mi = matrices[k].column(i);
                for j in 0..model.dim(l) {
                    let lhs = matrices[k + l].apply(model.cup_basis(k, l, i, j));
                    let rhs = model.cup_coords(k, &mi, l, &matrices[l].column(j));
                    if lhs != rhs {
                        return Err(bad(format!(
                            "not a ring map: M(v{i} ∪ v{j}) != M v{i} ∪ M v{j} in degrees ({k}, {l})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
