mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::linalg::{
    eigenvalues_approx, is_squarefree, jordan_profile, rat, ratio_to_f64, spectral_radius, RationalMatrix, RootConfig,
};

use common::{cofactor_charpoly, int_matrix, structured_matrix};

fn small_matrix(max_dim: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), n).prop_map(|rows| int_matrix(&rows))
    })
}

fn rational_matrix(max_dim: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |v| {
            RationalMatrix::new(n, n, v.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_hamilton(m in rational_matrix(5)) {
        let chi = m.charpoly().unwrap();
        prop_assert!(chi.eval_matrix(&m).is_zero());
    }

    #[test]
    fn charpoly_matches_cofactor_expansion(m in rational_matrix(4)) {
        prop_assert_eq!(m.charpoly().unwrap(), cofactor_charpoly(&m));
    }

    #[test]
    fn minpoly_divides_charpoly(m in small_matrix(6)) {
        let chi = m.charpoly().unwrap();
        let mu = m.minpoly().unwrap();
        prop_assert!(chi.exact_div(&mu).is_some());
        prop_assert!(mu.eval_matrix(&m).is_zero());
    }

    #[test]
    fn triangular_radius_is_max_diagonal(m in small_matrix(6), lower in any::<bool>()) {
        let n = m.rows();
        let mut t = m.clone();
        for i in 0..n {
            for j in 0..n {
                if (lower && j > i) || (!lower && j < i) {
                    t.set(i, j, rat(0, 1));
                }
            }
        }
        let expected = (0..n).map(|i| ratio_to_f64(t.get(i, i)).abs()).fold(0.0, f64::max);
        prop_assert!((spectral_radius(&t, &RootConfig::default()).unwrap() - expected).abs() <= 1e-9);
    }

    #[test]
    fn eigenvalues_multiply_back_to_charpoly(m in small_matrix(6)) {
        let chi = m.charpoly().unwrap();
        let roots = eigenvalues_approx(&m, &RootConfig::default()).unwrap().roots;
        let mut prod = vec![Complex64::new(1.0, 0.0)];
        for r in &roots {
            let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            prod = next;
        }
        let coeffs = chi.to_complex_coeffs();
        let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        for (a, b) in prod.iter().zip(&coeffs) {
            prop_assert!((a - b).norm() <= 1e-8 * scale, "{:?} vs {:?}", prod, coeffs);
        }
    }

    #[test]
    fn jordan_profile_accounts_for_every_dimension(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, _) = structured_matrix(&mut rng, 7);
        let p = jordan_profile(&m, &RootConfig::default()).unwrap();
        prop_assert_eq!(p.dimension(), m.rows());
    }
}

#[test]
fn semisimplicity_agrees_with_construction_and_profile() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = [0usize; 2];
    for _ in 0..100 {
        let (m, semisimple) = structured_matrix(&mut rng, 8);
        let squarefree = is_squarefree(&m.minpoly().unwrap()).unwrap();
        let trivial = jordan_profile(&m, &RootConfig::default()).unwrap().all_blocks_trivial();
        assert_eq!(squarefree, semisimple, "{m}");
        assert_eq!(trivial, semisimple, "{m}");
        seen[semisimple as usize] += 1;
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

/// Perron root of a positive matrix by plain power iteration.
fn power_iteration(m: &RationalMatrix) -> f64 {
    let n = m.rows();
    let a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| ratio_to_f64(m.get(i, j))).collect()).collect();
    let mut v = vec![1.0; n];
    let mut est = 0.0;
    for _ in 0..2000 {
        let w: Vec<f64> = a.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        est = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.iter().map(|x| x / norm).collect();
    }
    est
}

#[test]
fn spectral_radius_matches_power_iteration_on_positive_matrices() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.random_range(2..=7);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(1..=9)).collect()).collect();
        let m = int_matrix(&rows);
        let sp = spectral_radius(&m, &RootConfig::default()).unwrap();
        let oracle = power_iteration(&m);
        assert!((sp - oracle).abs() <= 1e-9 * oracle, "{sp} vs {oracle}");
    }
}
