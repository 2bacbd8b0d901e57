mod common;

use num_traits::{One, Zero};
use wdlab::cohomology::{exterior_model, kunneth, standard_symplectic, validate_model};
use wdlab::linalg::{rat, Rational, RationalMatrix};
use wdlab::models::builtin_bundles;
use wdlab::{GradedVector, VarietyModel};

fn every_model() -> Vec<(String, VarietyModel)> {
    let mut out: Vec<(String, VarietyModel)> =
        builtin_bundles().unwrap().into_iter().map(|(n, b)| (n, (*b.model).clone())).collect();
    out.push(("genus 3 curve".into(), (*common::curve_model(3)).clone()));
    out
}

#[test]
fn dual_basis_pairs_to_identity() {
    for (name, m) in every_model() {
        for k in 0..=m.top() {
            let d = m.dim(k);
            let duals = m.dual_basis(k).unwrap();
            for i in 0..d {
                let v = GradedVector::basis(k, d, i);
                for (j, w) in duals.iter().enumerate() {
                    let value = m.integrate(&m.cup(&v, w).unwrap());
                    let expected = if i == j { Rational::one() } else { Rational::zero() };
                    assert_eq!(value, expected, "{name}: H^{k} entry ({i}, {j})");
                }
            }
        }
    }
}

#[test]
fn double_dual_recovers_basis_up_to_graded_sign() {
    for (name, m) in every_model() {
        let top = m.top();
        for k in 0..=top {
            let d = m.dim(k);
            let duals = m.dual_basis(k).unwrap();
            let sign = if (k * (top - k)) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            // dual of the dual basis, computed in H^{top-k}
            let w_rows: Vec<Vec<Rational>> = duals.iter().map(|w| w.coords.clone()).collect();
            if d == 0 {
                continue;
            }
            let w = RationalMatrix::from_rows(w_rows).unwrap();
            let p = m.pairing_matrix(top - k);
            // u_i in H^k with ∫ w_j ∪ u_i = δ_ij: solve (W P) U^T = I
            let u = (&w * &p).inverse().unwrap().transpose();
            for i in 0..d {
                let expected: Vec<Rational> = GradedVector::basis(k, d, i).scale(&sign).coords;
                assert_eq!(u.row(i).to_vec(), expected, "{name}: H^{k} basis vector {i}");
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[test]
fn kunneth_is_valid_and_integrates_products_of_ample_classes() {
    let models = every_model();
    for (na, a) in &models[..6] {
        for (nb, b) in &models[4..] {
            let p = kunneth(a, b);
            assert!(validate_model(&p).valid, "{na} x {nb}");
            let n = a.n() + b.n();
            let h = p.ample();
            let mut power = p.unit();
            for _ in 0..n {
                power = p.cup(&power, &h).unwrap();
            }
            let top_a = a.integrate(&a.ample_power(a.n()).unwrap());
            let top_b = b.integrate(&b.ample_power(b.n()).unwrap());
            let expected = Rational::from_integer(binomial(n, a.n()).into()) * top_a * top_b;
            assert_eq!(p.integrate(&power), expected, "{na} x {nb}");
        }
    }
}

#[test]
fn genus_one_exterior_model() {
    let omega = standard_symplectic(1);
    let m = exterior_model(&omega, &["a".into(), "b".into()], None).unwrap();
    assert_eq!(m.dims(), &[1, 2, 1]);
    assert_eq!(m.pairing_matrix(1), omega);
    assert!(validate_model(&m).valid);
}
