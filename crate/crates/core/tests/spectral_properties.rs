mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::linalg::{jordan_profile, rat, Rational, RationalMatrix, RootConfig};
use wdlab::models::{builtin_bundles, kunneth_bundle, elliptic_model, mult_by_m};
use wdlab::spectral::{b_numbers, ddc_check, is_semisimple, log_concavity, norm_comparison_constant, SpectralConfig};
use wdlab::CorrespondenceAction;

use common::{curve_model, structured_matrix};

#[test]
fn geometric_actions_pass_ddc_with_trivial_b_numbers() {
    let cfg = SpectralConfig::default();
    let mut bundles = builtin_bundles().unwrap();
    let e = elliptic_model(7, 3).unwrap();
    bundles.push(("E x E over F_7".into(), kunneth_bundle(&e, &e).unwrap()));
    for (name, b) in &bundles {
        let mut actions: Vec<(String, CorrespondenceAction)> = b.actions.clone();
        if let Ok(m2) = mult_by_m(&b.model, 2) {
            actions.push(("mult-by-2".into(), m2));
        }
        for (action, f) in &actions {
            assert!(ddc_check(f, 1e-9, &cfg).unwrap().iter().all(|r| r.holds), "{name}/{action}");
            for j in 0..=b.model.n() {
                let bn = b_numbers(f, j, &cfg).unwrap();
                assert_eq!((bn.b_coh, bn.b_alg), (1, 1), "{name}/{action} j={j}");
            }
        }
    }
}

#[test]
fn exact_semisimplicity_matches_jordan_profile_on_embedded_matrices() {
    let model = curve_model(4);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let (m, expected) = structured_matrix(&mut rng, 8);
        let mut h1 = RationalMatrix::identity(8);
        for i in 0..m.rows() {
            for j in 0..m.rows() {
                h1.set(i, j, m.get(i, j).clone());
            }
        }
        let f = CorrespondenceAction::new(
            model.clone(),
            vec![RationalMatrix::identity(1), h1.clone(), RationalMatrix::identity(1)],
            false,
            None,
        )
        .unwrap();
        let exact = is_semisimple(&f, 1).unwrap();
        let profile = jordan_profile(&h1, &RootConfig::default()).unwrap().all_blocks_trivial();
        assert_eq!(exact, expected);
        assert_eq!(exact, profile);
    }
}

#[test]
fn polarized_ring_maps_have_log_concave_degrees() {
    for (name, b) in builtin_bundles().unwrap() {
        let mut polarized: Vec<CorrespondenceAction> =
            b.actions.iter().filter(|(_, f)| f.is_ring_map() && f.polarization().is_some()).map(|(_, f)| f.clone()).collect();
        for m in [2, 3, -2] {
            if let Ok(f) = mult_by_m(&b.model, m) {
                polarized.push(f);
            }
        }
        assert!(!polarized.is_empty(), "{name}");
        for f in polarized {
            let lc = log_concavity(&f);
            assert!(lc.holds, "{name}: {:?}", lc.sequence);
        }
    }
}

#[test]
fn identity_norm_constant_comes_from_dimensions() {
    for (name, b) in builtin_bundles().unwrap() {
        let m = &b.model;
        let id = CorrespondenceAction::identity(m.clone());
        let a: Vec<Rational> = (0..=m.n()).map(|j| rat(m.algebraic(j).len() as i64, 1)).collect();
        let expected = (0..=m.top())
            .map(|k| {
                let d = rat(m.dim(k) as i64, 1);
                if k % 2 == 0 { &(&d * &d) / &(&a[k / 2] * &a[k / 2]) } else { &(&d * &d) / &(&a[k / 2] * &a[k / 2 + 1]) }
            })
            .max()
            .unwrap();
        let c = norm_comparison_constant(&id).unwrap();
        assert_eq!(c.c_squared, wdlab::linalg::format_rational(&expected), "{name}");
    }
}

#[test]
fn norm_constant_is_transpose_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, b) in builtin_bundles().unwrap() {
        for _ in 0..5 {
            let f = CorrespondenceAction::random(b.model.clone(), &mut rng, 3);
            let (Ok(cf), Ok(ct)) = (norm_comparison_constant(&f), norm_comparison_constant(&f.transpose().unwrap())) else {
                continue;
            };
            assert_eq!(cf.c_squared, ct.c_squared, "{name}");
            let top = b.model.top();
            for k in 0..=top {
                assert_eq!(cf.rows[k].ratio_squared, ct.rows[top - k].ratio_squared, "{name} degree {k}");
            }
        }
    }
}
