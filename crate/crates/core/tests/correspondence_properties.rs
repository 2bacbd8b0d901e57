use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::linalg::{format_rational, rat, ratio_to_f64, spectral_radius, Rational, RootConfig};
use wdlab::models::builtin_bundles;
use wdlab::{CorrespondenceAction, VarietyModel};

fn models() -> Vec<(String, Arc<VarietyModel>)> {
    builtin_bundles().unwrap().into_iter().map(|(n, b)| (n, b.model)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transpose_is_an_involution_and_reflects_norms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, m) in models() {
            let f = CorrespondenceAction::random(m.clone(), &mut rng, 3);
            let ft = f.transpose().unwrap();
            let back = ft.transpose().unwrap();
            prop_assert_eq!(back.matrices(), f.matrices(), "{}", name);
            let top = m.top();
            for k in 0..=top {
                prop_assert_eq!(f.norm_h(k), ft.norm_h(top - k), "{} H^{}", name, k);
            }
            for j in 0..=m.n() {
                prop_assert_eq!(f.norm_n(j), ft.norm_n(m.n() - j), "{} N^{}", name, j);
            }
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = models().remove(5).1;
        let f = CorrespondenceAction::random(m.clone(), &mut rng, 2);
        let g = CorrespondenceAction::random(m.clone(), &mut rng, 2);
        let h = CorrespondenceAction::random(m, &mut rng, 2);
        let left = CorrespondenceAction::compose(&CorrespondenceAction::compose(&f, &g).unwrap(), &h).unwrap();
        let right = CorrespondenceAction::compose(&f, &CorrespondenceAction::compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left.matrices(), right.matrices());
    }
}

/// With `norm(M) = L1(M^T G)` and entrywise L1 submultiplicative,
/// `norm(g^* f^*) <= L1(G^{-1}) norm(f) norm(g)`.
fn basis_constant(m: &VarietyModel, k: usize) -> Rational {
    if m.dim(k) == 0 {
        return rat(0, 1);
    }
    let g = &m.pairing_matrix(k) * m.dual_matrix(k).unwrap();
    g.inverse().unwrap().entry_l1()
}

#[test]
fn norms_are_submultiplicative_up_to_the_basis_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, m) in models() {
        for _ in 0..10 {
            let f = CorrespondenceAction::random(m.clone(), &mut rng, 4);
            let g = CorrespondenceAction::random(m.clone(), &mut rng, 4);
            let fg = CorrespondenceAction::compose(&f, &g).unwrap();
            for k in 0..=m.top() {
                let bound = basis_constant(&m, k) * f.norm_h(k) * g.norm_h(k);
                assert!(fg.norm_h(k) <= bound, "{name} H^{k}: {} > {}", format_rational(&fg.norm_h(k)), format_rational(&bound));
            }
        }
    }
}

#[test]
fn iterate_roots_approach_the_spectral_radius() {
    let cfg = RootConfig::default();
    for (name, b) in builtin_bundles().unwrap() {
        for (action, f) in &b.actions {
            for k in 0..=b.model.top() {
                let d = b.model.dim(k);
                if d == 0 || d > 3 {
                    continue;
                }
                let sp = spectral_radius(f.matrix(k), &cfg).unwrap();
                let seq = f.iterate_norms_h(k, 200);
                let early = (seq.roots[49] - sp).abs();
                let late = (seq.last_root() - sp).abs();
                // semisimple actions: norm(M^t) is within a fixed factor of sp^t
                assert!(late <= 0.02 * sp.max(1.0), "{name}/{action} H^{k}: gap {late}");
                assert!(late <= early + 1e-12, "{name}/{action} H^{k}: {early} -> {late}");
            }
        }
    }
}

#[test]
fn root_sequence_gap_at_two_hundred_is_not_below_one_in_a_million() {
    // identity on a 2-dimensional H^1: norm(I^t) = 2 for every t
    let b = wdlab::models::elliptic_model(5, 1).unwrap();
    let id = b.action("identity").unwrap();
    let seq = id.iterate_norms_h(1, 200);
    assert_eq!(seq.norms[199], rat(2, 1));
    let gap = seq.last_root() - 1.0;
    assert!((gap - (2f64.powf(1.0 / 200.0) - 1.0)).abs() < 1e-15);
    assert!(gap > 1e-6);
    assert!((ratio_to_f64(&seq.norms[0]) - 2.0).abs() == 0.0);
}
