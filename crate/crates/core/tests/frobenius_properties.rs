use num_complex::Complex64;
use proptest::prelude::*;
use wdlab::frobenius::{
    eq2_ratio, fractional_power, gamma_r, jordan_formula_entry, lemma1_audit, FractionalConfig, Lemma1Input,
};
use wdlab::linalg::{rat, Conjugation, RootConfig};
use wdlab::models::{builtin_bundles, elliptic_model, projective_space_model};
use wdlab::CorrespondenceAction;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Scaling by `γ_ρ` is the same as moving along the `r` axis.
    #[test]
    fn gamma_shifts_the_r_axis(rn in 1i64..12, rd in 1i64..12, pn in 2i64..9, pd in 1i64..4, which in 0usize..8) {
        let (_, b) = builtin_bundles().unwrap().remove(which);
        let r = rat(rn, rd);
        let rho = rat(pn, pd);
        let g = gamma_r(&b.model, &rho).unwrap();
        let id = CorrespondenceAction::identity(b.model.clone());
        for k in 0..=b.model.top() {
            prop_assert_eq!(eq2_ratio(&g, k, &r), eq2_ratio(&id, k, &(&r * &rho)));
        }
    }

    #[test]
    fn fractional_powers_form_a_semigroup(s in -2.0f64..2.0, t in -2.0f64..2.0, elliptic in any::<bool>()) {
        let b = if elliptic { elliptic_model(11, 3).unwrap() } else { projective_space_model(2, 5).unwrap() };
        let f = b.frobenius().unwrap();
        let cfg = FractionalConfig::default();
        for k in 0..=b.model.top() {
            if b.model.dim(k) == 0 {
                continue;
            }
            let fs = fractional_power(f, k, s, &cfg).unwrap().matrix;
            let ft = fractional_power(f, k, t, &cfg).unwrap().matrix;
            let fst = fractional_power(f, k, s + t, &cfg).unwrap().matrix;
            let scale = fst.max_abs().max(1.0);
            prop_assert!((&fs * &ft).max_abs_diff(&fst) <= 1e-8 * scale);
        }
    }

    #[test]
    fn fractional_eigen_moduli_follow_weight(s in -2.0f64..2.0, a in -6i64..=6) {
        let q = 11u64;
        let b = elliptic_model(q, a).unwrap();
        let p = fractional_power(b.frobenius().unwrap(), 1, s, &FractionalConfig::default()).unwrap();
        let ev = p.matrix.eigenvalues(&RootConfig::default()).unwrap().roots;
        let expected = (q as f64).powf(s / 2.0);
        for z in ev {
            prop_assert!((z.norm() - expected).abs() <= 1e-8 * expected.max(1.0));
        }
    }

    #[test]
    fn jordan_blocks_satisfy_the_adjoint_bound(re in -3.0f64..3.0, im in -3.0f64..3.0, size in 1usize..=6) {
        let lambda = Complex64::new(re, im);
        let audit = lemma1_audit(
            &Lemma1Input::Jordan { lambda, size },
            Conjugation::ConjugateTranspose,
            1e-9,
            &RootConfig::default(),
        ).unwrap();
        prop_assert!(audit.holds);
        prop_assert_eq!(audit.entries_match, Some(true));
    }
}

#[test]
fn jordan_formula_matches_a_hand_product() {
    // J·J^* for J = J(λ, 3), written out by hand.
    let l = Complex64::new(0.5, -2.0);
    let lc = l.conj();
    let m2 = l.norm_sqr();
    let hand = [
        [Complex64::from(1.0 + m2), lc, Complex64::from(0.0)],
        [l, Complex64::from(1.0 + m2), lc],
        [Complex64::from(0.0), l, Complex64::from(m2)],
    ];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(jordan_formula_entry(l, 3, i, j), hand[i][j], "({i}, {j})");
        }
    }
}
