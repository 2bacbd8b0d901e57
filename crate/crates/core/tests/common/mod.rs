#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use wdlab::cohomology::{CupEntry, ModelParts};
use wdlab::linalg::{rat, RatPolynomial, Rational, RationalMatrix};
use wdlab::VarietyModel;

pub fn int_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_i64(&refs)
}

/// Unit lower times unit upper triangular, so the determinant is 1.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut l = RationalMatrix::identity(n);
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, rat(rng.random_range(-2..=2), 1));
            u.set(j, i, rat(rng.random_range(-2..=2), 1));
        }
    }
    &l * &u
}

fn jordan(lambda: i64, size: usize) -> RationalMatrix {
    let mut m = RationalMatrix::identity(size).scale(&rat(lambda, 1));
    for i in 0..size.saturating_sub(1) {
        m.set(i, i + 1, rat(1, 1));
    }
    m
}

/// A matrix with known Jordan structure: integer Jordan blocks plus
/// companion blocks of `x^2 + 1` or `(x^2 + 1)^2`, conjugated by a
/// unimodular matrix. Returns the matrix and whether it is semisimple.
pub fn structured_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> (RationalMatrix, bool) {
    let mut blocks = Vec::new();
    let mut dim = 0;
    let mut semisimple = true;
    while dim < max_dim {
        let room = max_dim - dim;
        let choice = rng.random_range(0..4);
        let block = if choice == 0 && room >= 2 {
            let quartic = room >= 4 && rng.random_bool(0.5);
            if quartic {
                semisimple = false;
                RationalMatrix::companion(&RatPolynomial::from_i64(&[1, 0, 2, 0, 1])).unwrap()
            } else {
                RationalMatrix::companion(&RatPolynomial::from_i64(&[1, 0, 1])).unwrap()
            }
        } else {
            let size = rng.random_range(1..=room.min(3));
            if size > 1 {
                semisimple = false;
            }
            jordan(rng.random_range(-2..=3), size)
        };
        dim += block.rows();
        blocks.push(block);
        if rng.random_bool(0.3) {
            break;
        }
    }
    let d = RationalMatrix::block_diagonal(&blocks);
    let u = unimodular(rng, d.rows());
    let m = &(&u * &d) * &u.inverse().unwrap();
    (m, semisimple)
}

/// `det(xI - M)` by cofactor expansion with polynomial entries.
pub fn cofactor_charpoly(m: &RationalMatrix) -> RatPolynomial {
    let n = m.rows();
    let entries: Vec<Vec<RatPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m.get(i, j).clone();
                    if i == j {
                        RatPolynomial::new(vec![c, rat(1, 1)])
                    } else {
                        RatPolynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    fn det(a: &[Vec<RatPolynomial>]) -> RatPolynomial {
        if a.is_empty() {
            return RatPolynomial::one();
        }
        let mut acc = RatPolynomial::zero();
        for (j, pivot) in a[0].iter().enumerate() {
            let minor: Vec<Vec<RatPolynomial>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = pivot * &det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    det(&entries)
}

/// Genus-`g` curve ring: `H^1` of dimension `2g` with the standard
/// symplectic cup product into `H^2`.
pub fn curve_model(g: usize) -> Arc<VarietyModel> {
    let mut cup = vec![
        CupEntry { k: 0, l: 0, i: 0, j: 0, target: vec![rat(1, 1)] },
        CupEntry { k: 0, l: 2, i: 0, j: 0, target: vec![rat(1, 1)] },
        CupEntry { k: 2, l: 0, i: 0, j: 0, target: vec![rat(1, 1)] },
    ];
    for i in 0..2 * g {
        cup.push(CupEntry { k: 0, l: 1, i: 0, j: i, target: unit(2 * g, i) });
        cup.push(CupEntry { k: 1, l: 0, i, j: 0, target: unit(2 * g, i) });
    }
    for a in 0..g {
        cup.push(CupEntry { k: 1, l: 1, i: 2 * a, j: 2 * a + 1, target: vec![rat(1, 1)] });
        cup.push(CupEntry { k: 1, l: 1, i: 2 * a + 1, j: 2 * a, target: vec![rat(-1, 1)] });
    }
    cup.sort_by_key(|e| (e.k, e.l, e.i, e.j));
    Arc::new(
        VarietyModel::from_parts(ModelParts {
            n: 1,
            dims: vec![1, 2 * g, 1],
            labels: vec![vec!["1".into()], (0..2 * g).map(|i| format!("e{i}")).collect(), vec!["pt".into()]],
            cup,
            integrate: vec![rat(1, 1)],
            ample: vec![rat(1, 1)],
            algebraic: vec![vec![0], vec![0]],
            q: None,
        })
        .unwrap(),
    )
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { rat(1, 1) } else { rat(0, 1) }).collect()
}
