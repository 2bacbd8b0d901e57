use num_traits::{One, Zero};

use super::model::{CupEntry, ModelParts, VarietyModel};
use crate::linalg::{Rational, RationalMatrix};

/// The cohomology of a point: `H^0 = Q`, `∫ 1 = 1`.
pub fn point_model() -> VarietyModel {
    VarietyModel::from_parts(ModelParts {
        n: 0,
        dims: vec![1],
        labels: vec![vec!["1".into()]],
        cup: vec![CupEntry { k: 0, l: 0, i: 0, j: 0, target: vec![Rational::one()] }],
        integrate: vec![Rational::one()],
        ample: vec![],
        algebraic: vec![vec![0]],
        q: None,
    })
    .expect("point model is well formed")
}

/// Layout of `H^k(A × B) = ⊕_{a+b=k} H^a(A) ⊗ H^b(B)`: blocks ordered by
/// `a`, and inside a block the `A` index is major.
struct Layout {
    top_a: usize,
    top_b: usize,
    dims_a: Vec<usize>,
    dims_b: Vec<usize>,
}

impl Layout {
    fn blocks(&self, k: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let lo = k.saturating_sub(self.top_b);
        let hi = k.min(self.top_a);
        (lo..=hi).map(move |a| (a, k - a))
    }

    fn offset(&self, k: usize, a: usize) -> usize {
        self.blocks(k).take_while(|&(x, _)| x < a).map(|(x, y)| self.dims_a[x] * self.dims_b[y]).sum()
    }

    fn dim(&self, k: usize) -> usize {
        self.blocks(k).map(|(a, b)| self.dims_a[a] * self.dims_b[b]).sum()
    }

    fn index(&self, k: usize, a: usize, i: usize, j: usize) -> usize {
        self.offset(k, a) + i * self.dims_b[k - a] + j
    }
}

fn layout(ma: &VarietyModel, mb: &VarietyModel) -> Layout {
    Layout { top_a: ma.top(), top_b: mb.top(), dims_a: ma.dims().to_vec(), dims_b: mb.dims().to_vec() }
}

/// Product model with the Koszul sign
/// `(a⊗b) ∪ (c⊗d) = (-1)^{deg b · deg c} (a∪c) ⊗ (b∪d)`.
pub fn kunneth(ma: &VarietyModel, mb: &VarietyModel) -> VarietyModel {
    let lay = layout(ma, mb);
    let n = ma.n() + mb.n();
    let top = 2 * n;
    let dims: Vec<usize> = (0..=top).map(|k| lay.dim(k)).collect();

    let mut labels = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut row = Vec::with_capacity(dims[k]);
        for (a, b) in lay.blocks(k) {
            for la in &ma.labels()[a] {
                for lb in &mb.labels()[b] {
                    row.push(format!("{la}⊗{lb}"));
                }
            }
        }
        labels.push(row);
    }

    let mut cup = Vec::new();
    for k in 0..=top {
        for l in 0..=top - k {
            let mut block: Vec<Vec<Rational>> = vec![vec![Rational::zero(); dims[k + l]]; dims[k] * dims[l]];
            for (a, b) in lay.blocks(k) {
                for (c, d) in lay.blocks(l) {
                    if a + c > lay.top_a || b + d > lay.top_b {
                        continue;
                    }
                    let sign = if (b * c) % 2 == 0 { Rational::one() } else { -Rational::one() };
                    for i in 0..lay.dims_a[a] {
                        for j in 0..lay.dims_b[b] {
                            let left = lay.index(k, a, i, j);
                            for i2 in 0..lay.dims_a[c] {
                                let xa = ma.cup_basis(a, c, i, i2);
                                if xa.iter().all(Zero::is_zero) {
                                    continue;
                                }
                                for j2 in 0..lay.dims_b[d] {
                                    let yb = mb.cup_basis(b, d, j, j2);
                                    if yb.iter().all(Zero::is_zero) {
                                        continue;
                                    }
                                    let right = lay.index(l, c, i2, j2);
                                    let target = &mut block[left * dims[l] + right];
                                    for (p, xp) in xa.iter().enumerate() {
                                        if xp.is_zero() {
                                            continue;
                                        }
                                        for (r, yr) in yb.iter().enumerate() {
                                            if yr.is_zero() {
                                                continue;
                                            }
                                            target[lay.index(k + l, a + c, p, r)] += &sign * xp * yr;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for (idx, target) in block.into_iter().enumerate() {
                if target.iter().any(|t| !t.is_zero()) {
                    cup.push(CupEntry { k, l, i: idx / dims[l].max(1), j: idx % dims[l].max(1), target });
                }
            }
        }
    }

    let mut integrate = vec![Rational::zero(); dims[top]];
    for (i, ia) in ma.integrate_functional().iter().enumerate() {
        for (j, ib) in mb.integrate_functional().iter().enumerate() {
            integrate[lay.index(top, lay.top_a, i, j)] = ia * ib;
        }
    }

    let mut ample = vec![Rational::zero(); if n == 0 { 0 } else { dims[2] }];
    if ma.n() > 0 {
        for (i, h) in ma.ample().coords.iter().enumerate() {
            ample[lay.index(2, 2, i, 0)] += h;
        }
    }
    if mb.n() > 0 {
        for (j, h) in mb.ample().coords.iter().enumerate() {
            ample[lay.index(2, 0, 0, j)] += h;
        }
    }

    let mut algebraic = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut idx = Vec::new();
        for i in 0..=ma.n().min(j) {
            let l = j - i;
            if l > mb.n() {
                continue;
            }
            for &x in ma.algebraic(i) {
                for &y in mb.algebraic(l) {
                    idx.push(lay.index(2 * j, 2 * i, x, y));
                }
            }
        }
        idx.sort_unstable();
        algebraic.push(idx);
    }

    let q = match (ma.q(), mb.q()) {
        (Some(x), Some(y)) if x == y => Some(x),
        _ => None,
    };

    VarietyModel::from_parts(ModelParts { n, dims, labels, cup, integrate, ample, algebraic, q })
        .expect("product of well-formed models is well formed")
}

/// Degreewise `⊕_{a+b=k} M_a ⊗ N_b`, the action of `f × g` on the product.
pub fn kunneth_matrices(
    ma: &VarietyModel,
    mb: &VarietyModel,
    fa: &[RationalMatrix],
    fb: &[RationalMatrix],
) -> Vec<RationalMatrix> {
    let lay = layout(ma, mb);
    (0..=lay.top_a + lay.top_b)
        .map(|k| {
            let blocks: Vec<RationalMatrix> = lay.blocks(k).map(|(a, b)| fa[a].kronecker(&fb[b])).collect();
            RationalMatrix::block_diagonal(&blocks)
        })
        .collect()
}
