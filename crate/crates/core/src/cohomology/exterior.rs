//! Exterior-algebra models `H^k = Λ^k H^1`, as for abelian varieties.
//!
//! `H^1` has basis `e_0 … e_{2g-1}` and `H^k` has the wedges `e_S` for
//! `k`-subsets `S` in lexicographic order. The top class `e_0∧…∧e_{2g-1}`
//! integrates to the Pfaffian of the alternating form, so for `g = 1` the
//! pairing on `H^1` is the form itself.

use num_traits::{One, Zero};

use super::model::{CupEntry, ModelParts, VarietyModel};
use crate::linalg::{Rational, RationalMatrix};
use crate::{Error, Result};

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            if m - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of `e_S ∧ e_T` relative to `e_{S∪T}`; `None` if they overlap.
fn wedge_sign(s: &[usize], t: &[usize]) -> Option<bool> {
    let mut inversions = 0usize;
    for a in s {
        for b in t {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    Some(inversions.is_multiple_of(2))
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian(a: &RationalMatrix) -> Rational {
    let n = a.rows();
    if n == 0 {
        return Rational::one();
    }
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for j in 1..n {
        let entry = a.get(0, j);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (1..n).filter(|&x| x != j).collect();
        let minor = pfaffian(&a.submatrix(&rest, &rest));
        // (-1)^{j+1} with 0-based j
        if j % 2 == 1 {
            total += entry * minor;
        } else {
            total -= entry * minor;
        }
    }
    total
}

/// Exterior model on `H^1 = Q^{2g}` with alternating form `omega`.
///
/// `algebraic` overrides the algebraic subspaces; when absent, `omega` must
/// be block diagonal in consecutive pairs and `A^j` is spanned by the wedges
/// of `j` of those pairs.
pub fn exterior_model(
    omega: &RationalMatrix,
    h1_labels: &[String],
    algebraic: Option<Vec<Vec<usize>>>,
) -> Result<VarietyModel> {
    let m = omega.rows();
    if !omega.is_square() || m % 2 == 1 || m == 0 {
        return Err(Error::Spec(format!("alternating form must be square of even positive size, got {}x{}", omega.rows(), omega.cols())));
    }
    if omega.transpose() != omega.scale(&-Rational::one()) {
        return Err(Error::Spec("form is not alternating".into()));
    }
    let inv = omega.inverse().map_err(|_| Error::Spec("alternating form is degenerate".into()))?;
    if h1_labels.len() != m {
        return Err(Error::Spec(format!("{} labels for an H^1 of dimension {m}", h1_labels.len())));
    }
    let g = m / 2;
    let top = m;
    let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(|k| subsets(m, k)).collect();
    let index_of = |s: &[usize]| -> usize { bases[s.len()].binary_search_by(|x| x.as_slice().cmp(s)).expect("subset present") };

    let labels: Vec<Vec<String>> = bases
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| if s.is_empty() { "1".to_string() } else { s.iter().map(|&i| h1_labels[i].as_str()).collect::<Vec<_>>().join("∧") })
                .collect()
        })
        .collect();

    let mut cup = Vec::new();
    for k in 0..=top {
        for l in 0..=top - k {
            for (i, s) in bases[k].iter().enumerate() {
                for (j, t) in bases[l].iter().enumerate() {
                    if let Some(positive) = wedge_sign(s, t) {
                        let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
                        u.sort_unstable();
                        let mut target = vec![Rational::zero(); bases[k + l].len()];
                        target[index_of(&u)] = if positive { Rational::one() } else { -Rational::one() };
                        cup.push(CupEntry { k, l, i, j, target });
                    }
                }
            }
        }
    }

    let mut ample = vec![Rational::zero(); bases[2].len()];
    for (idx, s) in bases[2].iter().enumerate() {
        ample[idx] = inv.get(s[1], s[0]).clone();
    }

    let algebraic = match algebraic {
        Some(a) => a,
        None => {
            let block_diagonal = (0..m).all(|a| (0..m).all(|b| a / 2 == b / 2 || omega.get(a, b).is_zero()));
            if !block_diagonal {
                return Err(Error::Spec("algebraic subspaces must be given for a form that is not block diagonal in pairs".into()));
            }
            (0..=g)
                .map(|j| {
                    subsets(g, j)
                        .iter()
                        .map(|pairs| index_of(&pairs.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect::<Vec<_>>()))
                        .collect::<Vec<usize>>()
                })
                .map(|mut v| {
                    v.sort_unstable();
                    v
                })
                .collect()
        }
    };

    let mut model = VarietyModel::from_parts(ModelParts {
        n: g,
        dims: bases.iter().map(Vec::len).collect(),
        labels,
        cup,
        integrate: vec![pfaffian(omega)],
        ample,
        algebraic,
        q: None,
    })?;
    let vol = model.integrate(&model.ample_power(g)?);
    if vol.is_zero() {
        return Err(Error::Spec("alternating form yields no ample class".into()));
    }
    if vol < Rational::zero() {
        let mut parts = model.to_parts();
        parts.ample = parts.ample.iter().map(|c| -c).collect();
        model = VarietyModel::from_parts(parts)?;
    }
    Ok(model)
}

/// `Λ^k M` for every `k`: entry `(S, T)` is the minor `det M[S, T]`.
pub fn exterior_power_matrices(h1: &RationalMatrix) -> Vec<RationalMatrix> {
    let m = h1.rows();
    (0..=m)
        .map(|k| {
            let b = subsets(m, k);
            let mut out = RationalMatrix::zeros(b.len(), b.len());
            for (i, s) in b.iter().enumerate() {
                for (j, t) in b.iter().enumerate() {
                    let d = if k == 0 { Rational::one() } else { h1.submatrix(s, t).determinant().expect("square minor") };
                    out.set(i, j, d);
                }
            }
            out
        })
        .collect()
}

/// The standard form: block diagonal with `[[0, 1], [-1, 0]]` blocks.
pub fn standard_symplectic(g: usize) -> RationalMatrix {
    let mut o = RationalMatrix::zeros(2 * g, 2 * g);
    for p in 0..g {
        o.set(2 * p, 2 * p + 1, Rational::one());
        o.set(2 * p + 1, 2 * p, -Rational::one());
    }
    o
}
