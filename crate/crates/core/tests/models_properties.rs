use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdlab::cohomology::validate_model;
use wdlab::linalg::{rat, Rational, RationalMatrix};
use wdlab::models::{
    abelian_product_model, builtin_bundles, ec_point_count_naive, elliptic_from_curve, kunneth_bundle, mult_by_m,
    primes_up_to, random_curve, synthetic_ddc_failure, synthetic_non_semisimple,
};
use wdlab::CorrespondenceAction;

fn trace(m: &RationalMatrix) -> Rational {
    (0..m.rows()).fold(Rational::zero(), |acc, i| acc + m.get(i, i))
}

/// Alternating trace sum of Frobenius over all degrees.
fn lefschetz(f: &CorrespondenceAction) -> Rational {
    (0..=f.model().top()).fold(Rational::zero(), |acc, k| {
        let t = trace(f.matrix(k));
        if k % 2 == 0 { acc + t } else { acc - t }
    })
}

#[test]
fn every_constructor_yields_a_valid_model() {
    let mut all = builtin_bundles().unwrap();
    all.push(("synthetic jordan".into(), synthetic_non_semisimple().unwrap()));
    all.push(("synthetic ddc".into(), synthetic_ddc_failure().unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [5, 11, 23] {
        let c = random_curve(p, &mut rng).unwrap();
        let e = elliptic_from_curve(&c).unwrap();
        all.push((format!("product over F_{p}"), kunneth_bundle(&e, &e).unwrap()));
        all.push((format!("curve over F_{p}"), e));
    }
    for (name, b) in all {
        let report = validate_model(&b.model);
        assert!(report.valid, "{name}: {:?}", report.failures);
    }
}

#[test]
fn frobenius_trace_counts_points() {
    // Independent oracle: naive enumeration of affine solutions.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in primes_up_to(40).into_iter().filter(|&p| p > 3) {
        let c1 = random_curve(p, &mut rng).unwrap();
        let c2 = random_curve(p, &mut rng).unwrap();
        let n1 = ec_point_count_naive(&c1).unwrap();
        let n2 = ec_point_count_naive(&c2).unwrap();
        let e = elliptic_from_curve(&c1).unwrap();
        assert_eq!(lefschetz(e.frobenius().unwrap()), rat(n1.n as i64, 1), "p = {p}");
        let a = abelian_product_model(&[n1, n2]).unwrap();
        assert_eq!(lefschetz(a.frobenius().unwrap()), rat((n1.n * n2.n) as i64, 1), "p = {p}");
    }
}

#[test]
fn frobenius_commutes_with_multiplication() {
    for (name, b) in builtin_bundles().unwrap() {
        let f = b.frobenius().unwrap();
        for m in [2, 3, -2] {
            let Ok(g) = mult_by_m(&b.model, m) else { continue };
            let fg = CorrespondenceAction::compose(f, &g).unwrap();
            let gf = CorrespondenceAction::compose(&g, f).unwrap();
            assert_eq!(fg.matrices(), gf.matrices(), "{name}, m = {m}");
        }
    }
}

#[test]
fn frobenius_degrees_are_powers_of_q() {
    for (name, b) in builtin_bundles().unwrap() {
        let f = b.frobenius().unwrap();
        let q = rat(b.model.q().unwrap() as i64, 1);
        let top = b.model.top();
        assert_eq!(f.matrix(0).get(0, 0), &Rational::one(), "{name}");
        assert_eq!(f.matrix(top).get(0, 0), &num_traits::pow(q.clone(), b.model.n()), "{name}");
        let volume = f.deg(0);
        for j in 0..=b.model.n() {
            assert_eq!(f.deg(j), &volume * num_traits::pow(q.clone(), j), "{name} j = {j}");
        }
    }
}

#[test]
fn multiplication_requires_abelian_shape() {
    let (_, p2) = builtin_bundles().unwrap().remove(1);
    assert!(mult_by_m(&p2.model, 2).is_err());
    let (_, e) = builtin_bundles().unwrap().remove(4);
    assert!(mult_by_m(&e.model, 1).is_err());
    assert!(mult_by_m(&e.model, -3).is_ok());
}
