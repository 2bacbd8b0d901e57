//! Built-in models with their actions, and the elliptic point-count oracle.
//!
//! Only prime fields are counted, so `q = p` for every oracle-backed model.

use std::sync::Arc;

use num_traits::One;
use rand::Rng;

use crate::cohomology::{
    exterior_model, exterior_power_matrices, kunneth, kunneth_matrices, standard_symplectic, subsets, CupEntry,
    ModelParts, VarietyModel,
};
use crate::correspondence::CorrespondenceAction;
use crate::linalg::{rat, RatPolynomial, Rational, RationalMatrix};
use crate::{Error, Result};

pub const FROBENIUS: &str = "frobenius";
pub const IDENTITY: &str = "identity";

/// A model together with named actions on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelBundle {
    pub model: Arc<VarietyModel>,
    pub actions: Vec<(String, CorrespondenceAction)>,
}

impl ModelBundle {
    pub fn new(model: Arc<VarietyModel>) -> Self {
        Self { model, actions: Vec::new() }
    }

    pub fn with_action(mut self, name: &str, action: CorrespondenceAction) -> Self {
        self.actions.retain(|(n, _)| n != name);
        self.actions.push((name.to_string(), action));
        self
    }

    pub fn action(&self, name: &str) -> Option<&CorrespondenceAction> {
        self.actions.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn frobenius(&self) -> Option<&CorrespondenceAction> {
        self.action(FROBENIUS)
    }

    pub fn action_names(&self) -> Vec<&str> {
        self.actions.iter().map(|(n, _)| n.as_str()).collect()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `y^2 = x^3 + a4 x + a6` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    p: u64,
    a4: u64,
    a6: u64,
}

impl CurveSpec {
    pub fn new(p: u64, a4: i64, a6: i64) -> Result<Self> {
        if !(3..10_000).contains(&p) || !is_prime(p) {
            return Err(Error::Spec(format!("p = {p} must be a prime with 3 <= p < 10000")));
        }
        let red = |v: i64| v.rem_euclid(p as i64) as u64;
        let (a4, a6) = (red(a4), red(a6));
        let disc = (4 * a4 % p * a4 % p * a4 + 27 * a6 % p * a6) % p;
        if disc == 0 {
            return Err(Error::Spec(format!("singular curve: 4a4^3 + 27a6^2 = 0 mod {p}")));
        }
        Ok(Self { p, a4, a6 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a4(&self) -> u64 {
        self.a4
    }

    pub fn a6(&self) -> u64 {
        self.a6
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (x * x % p * x + self.a4 * x + self.a6) % p
    }
}

/// Number of points including infinity and the trace `a = p + 1 - N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub q: u64,
    pub n: u64,
    pub trace: i64,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn finish(c: &CurveSpec, n: u64) -> Result<CountResult> {
    let trace = c.p as i64 + 1 - n as i64;
    if (trace * trace) as u64 > 4 * c.p {
        return Err(Error::Spec(format!("Hasse bound violated: trace {trace} for p = {}", c.p)));
    }
    Ok(CountResult { q: c.p, n, trace })
}

/// Counting by quadratic characters: each `x` contributes `1 + (rhs/p)`.
pub fn ec_point_count(c: &CurveSpec) -> Result<CountResult> {
    let p = c.p;
    let mut n = 1u64;
    for x in 0..p {
        let r = c.rhs(x);
        n += if r == 0 {
            1
        } else if pow_mod(r, (p - 1) / 2, p) == 1 {
            2
        } else {
            0
        };
    }
    finish(c, n)
}

/// The naive double loop over all `(x, y)`.
pub fn ec_point_count_naive(c: &CurveSpec) -> Result<CountResult> {
    let p = c.p;
    let mut n = 1u64;
    for x in 0..p {
        let r = c.rhs(x);
        for y in 0..p {
            if y * y % p == r {
                n += 1;
            }
        }
    }
    finish(c, n)
}

/// A uniformly random nonsingular curve over `F_p`.
pub fn random_curve<R: Rng + ?Sized>(p: u64, rng: &mut R) -> Result<CurveSpec> {
    loop {
        let a4 = rng.random_range(0..p) as i64;
        let a6 = rng.random_range(0..p) as i64;
        match CurveSpec::new(p, a4, a6) {
            Ok(c) => return Ok(c),
            Err(Error::Spec(msg)) if msg.starts_with("singular") => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Naive count for the general form
/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `F_p`, coefficients
/// `[a1, a2, a3, a4, a6]`. Covers `p = 2`, where the short form is always
/// singular. Smoothness is checked at every affine point.
pub fn general_weierstrass_count(p: u64, coeffs: [i64; 5]) -> Result<CountResult> {
    if !(2..10_000).contains(&p) || !is_prime(p) {
        return Err(Error::Spec(format!("p = {p} must be a prime below 10000")));
    }
    let pi = p as i64;
    let [a1, a2, a3, a4, a6] = coeffs.map(|c| c.rem_euclid(pi));
    let mut n = 1u64;
    for x in 0..pi {
        for y in 0..pi {
            let f = (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6).rem_euclid(pi);
            if f != 0 {
                continue;
            }
            let fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4).rem_euclid(pi);
            let fy = (2 * y + a1 * x + a3).rem_euclid(pi);
            if fx == 0 && fy == 0 {
                return Err(Error::Spec(format!("singular curve: point ({x}, {y}) mod {p}")));
            }
            n += 1;
        }
    }
    let trace = pi + 1 - n as i64;
    if (trace * trace) as u64 > 4 * p {
        return Err(Error::Spec(format!("Hasse bound violated: trace {trace} for p = {p}")));
    }
    Ok(CountResult { q: p, n, trace })
}

/// A uniformly random smooth general-form curve over `F_p`, with its count.
pub fn random_general_curve<R: Rng + ?Sized>(p: u64, rng: &mut R) -> Result<([i64; 5], CountResult)> {
    loop {
        let coeffs: [i64; 5] = std::array::from_fn(|_| rng.random_range(0..p) as i64);
        match general_weierstrass_count(p, coeffs) {
            Ok(c) => return Ok((coeffs, c)),
            Err(Error::Spec(msg)) if msg.starts_with("singular") => continue,
            Err(e) => return Err(e),
        }
    }
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| is_prime(p)).collect()
}

/// Companion matrix of `x^2 - a x + q`.
pub fn frobenius_companion(q: u64, a: i64) -> RationalMatrix {
    RationalMatrix::companion(&RatPolynomial::from_i64(&[q as i64, -a, 1])).expect("monic quadratic")
}

fn check_weil(q: u64, a: i64) -> Result<()> {
    if q < 2 {
        return Err(Error::Spec(format!("q = {q} must be at least 2")));
    }
    if (a as i128) * (a as i128) > 4 * q as i128 {
        return Err(Error::Spec(format!("trace {a} violates a^2 <= 4q for q = {q}")));
    }
    Ok(())
}

fn ring_action(model: &Arc<VarietyModel>, matrices: Vec<RationalMatrix>, q: u64) -> Result<CorrespondenceAction> {
    CorrespondenceAction::new(model.clone(), matrices, true, Some(Rational::from_integer(q.into())))
}

fn standard_bundle(model: Arc<VarietyModel>, frobenius: CorrespondenceAction) -> ModelBundle {
    ModelBundle::new(model.clone())
        .with_action(FROBENIUS, frobenius)
        .with_action(IDENTITY, CorrespondenceAction::identity(model))
}

/// Genus-one model with Frobenius the companion of `x^2 - a x + q` on `H^1`.
pub fn elliptic_model(q: u64, a: i64) -> Result<ModelBundle> {
    check_weil(q, a)?;
    let model = Arc::new(
        exterior_model(&standard_symplectic(1), &["α".into(), "β".into()], None)?.with_q(Some(q)),
    );
    let qr = Rational::from_integer(q.into());
    let frob = ring_action(
        &model,
        vec![RationalMatrix::identity(1), frobenius_companion(q, a), RationalMatrix::diagonal(&[qr])],
        q,
    )?;
    Ok(standard_bundle(model, frob))
}

pub fn elliptic_from_curve(c: &CurveSpec) -> Result<ModelBundle> {
    let count = ec_point_count(c)?;
    elliptic_model(count.q, count.trace)
}

/// Truncated polynomial ring `Q[h]/(h^{n+1})` with `∫ h^n = 1`.
pub fn projective_space_ring(n: usize) -> VarietyModel {
    let top = 2 * n;
    let mut cup = Vec::new();
    for k in (0..=top).step_by(2) {
        for l in (0..=top - k).step_by(2) {
            cup.push(CupEntry { k, l, i: 0, j: 0, target: vec![Rational::one()] });
        }
    }
    VarietyModel::from_parts(ModelParts {
        n,
        dims: (0..=top).map(|k| 1 - k % 2).collect(),
        labels: (0..=top)
            .map(|k| match (k % 2, k / 2) {
                (1, _) => vec![],
                (_, 0) => vec!["1".to_string()],
                (_, 1) => vec!["h".to_string()],
                (_, j) => vec![format!("h^{j}")],
            })
            .collect(),
        cup,
        integrate: vec![Rational::one()],
        ample: if n == 0 { vec![] } else { vec![Rational::one()] },
        algebraic: vec![vec![0]; n + 1],
        q: None,
    })
    .expect("projective space ring is well formed")
}

/// `P^n` with Frobenius `q^j` on `H^{2j}`.
pub fn projective_space_model(n: usize, q: u64) -> Result<ModelBundle> {
    if n == 0 {
        return Err(Error::Spec("projective space needs n >= 1".into()));
    }
    if q < 2 {
        return Err(Error::Spec(format!("q = {q} must be at least 2")));
    }
    let model = Arc::new(projective_space_ring(n).with_q(Some(q)));
    let qr = Rational::from_integer(q.into());
    let matrices = (0..=2 * n)
        .map(|k| {
            if k % 2 == 1 {
                RationalMatrix::zeros(0, 0)
            } else {
                RationalMatrix::diagonal(&[num_traits::pow(qr.clone(), k / 2)])
            }
        })
        .collect();
    let frob = ring_action(&model, matrices, q)?;
    Ok(standard_bundle(model, frob))
}

/// Exterior algebra on `⊕ H^1(E_i)` with the functorial Frobenius.
pub fn abelian_product_model(curves: &[CountResult]) -> Result<ModelBundle> {
    let first = curves.first().ok_or_else(|| Error::Spec("at least one curve is needed".into()))?;
    if curves.iter().any(|c| c.q != first.q) {
        return Err(Error::Spec("all curves must share the same q".into()));
    }
    let traces: Vec<i64> = curves.iter().map(|c| c.trace).collect();
    abelian_product_from_traces(first.q, &traces)
}

pub fn abelian_product_from_traces(q: u64, traces: &[i64]) -> Result<ModelBundle> {
    if traces.is_empty() {
        return Err(Error::Spec("at least one trace is needed".into()));
    }
    for &a in traces {
        check_weil(q, a)?;
    }
    let g = traces.len();
    let labels: Vec<String> = if g == 1 {
        vec!["α".into(), "β".into()]
    } else {
        (1..=g).flat_map(|i| [format!("α{i}"), format!("β{i}")]).collect()
    };
    let model = Arc::new(exterior_model(&standard_symplectic(g), &labels, None)?.with_q(Some(q)));
    let blocks: Vec<RationalMatrix> = traces.iter().map(|&a| frobenius_companion(q, a)).collect();
    let h1 = RationalMatrix::block_diagonal(&blocks);
    let frob = ring_action(&model, exterior_power_matrices(&h1), q)?;
    Ok(standard_bundle(model, frob))
}

/// Product of two bundles; actions present in both under the same name are
/// combined as `f × g`.
pub fn kunneth_bundle(a: &ModelBundle, b: &ModelBundle) -> Result<ModelBundle> {
    let model = Arc::new(kunneth(&a.model, &b.model));
    let mut out = ModelBundle::new(model.clone());
    for (name, fa) in &a.actions {
        let Some(fb) = b.action(name) else { continue };
        let matrices = kunneth_matrices(&a.model, &b.model, fa.matrices(), fb.matrices());
        let polarization = match (fa.polarization(), fb.polarization()) {
            (Some(x), Some(y)) if x == y => Some(x.clone()),
            _ => None,
        };
        let action = CorrespondenceAction::new(model.clone(), matrices, fa.is_ring_map() && fb.is_ring_map(), polarization)?;
        out = out.with_action(name, action);
    }
    Ok(out)
}

/// Dimensions `C(2g, k)` and `H^*` generated by `H^1` under cup product.
pub fn is_abelian_type(model: &VarietyModel) -> bool {
    let d1 = model.dim(1);
    if d1 == 0 || d1 % 2 == 1 || model.n() * 2 != d1 {
        return false;
    }
    if (0..=model.top()).any(|k| model.dim(k) != subsets(d1, k).len()) {
        return false;
    }
    for k in 2..=model.top() {
        let mut rows = Vec::new();
        for i in 0..d1 {
            for j in 0..model.dim(k - 1) {
                rows.push(model.cup_basis(1, k - 1, i, j).to_vec());
            }
        }
        let span = RationalMatrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0);
        if span < model.dim(k) {
            return false;
        }
    }
    true
}

/// Multiplication by `m`: `m^k` on `H^k`, polarized by `m^2`.
pub fn mult_by_m(model: &Arc<VarietyModel>, m: i64) -> Result<CorrespondenceAction> {
    if m.abs() < 2 {
        return Err(Error::Spec(format!("|m| = {} must be at least 2", m.abs())));
    }
    if !is_abelian_type(model) {
        return Err(Error::Unsupported("multiplication by m needs an abelian-type model".into()));
    }
    let mr = Rational::from_integer(m.into());
    let scalars: Vec<Rational> = (0..=model.top()).map(|k| num_traits::pow(mr.clone(), k)).collect();
    CorrespondenceAction::scalars(model.clone(), &scalars, true, Some(&mr * &mr))
}

fn synthetic_base() -> Result<Arc<VarietyModel>> {
    let labels: Vec<String> = vec!["α1".into(), "β1".into(), "α2".into(), "β2".into()];
    Ok(Arc::new(exterior_model(&standard_symplectic(2), &labels, None)?))
}

/// A graded map with a size-2 Jordan block at the top modulus on `H^2`
/// but a scalar on `A^1`, so `b_coh = 2` and `b_alg = 1`. It cannot be the
/// pullback of an endomorphism.
pub fn synthetic_non_semisimple() -> Result<ModelBundle> {
    let model = synthetic_base()?;
    let two = rat(2, 1);
    let mut matrices: Vec<RationalMatrix> = model.dims().iter().map(|&d| RationalMatrix::identity(d)).collect();
    let alg = model.algebraic(1).to_vec();
    let rest: Vec<usize> = (0..model.dim(2)).filter(|i| !alg.contains(i)).collect();
    let mut m2 = RationalMatrix::identity(model.dim(2)).scale(&two);
    m2.set(rest[0], rest[1], Rational::one());
    matrices[2] = m2;
    matrices[4] = RationalMatrix::diagonal(&[rat(4, 1)]);
    let action = CorrespondenceAction::new(model.clone(), matrices, false, None)?;
    Ok(ModelBundle::new(model.clone())
        .with_action("jordan", action)
        .with_action(IDENTITY, CorrespondenceAction::identity(model)))
}

/// Identity everywhere except one class outside `A^1` scaled by 2, so
/// `χ_2 = 2` while `λ_1 = 1`.
pub fn synthetic_ddc_failure() -> Result<ModelBundle> {
    let model = synthetic_base()?;
    let mut matrices: Vec<RationalMatrix> = model.dims().iter().map(|&d| RationalMatrix::identity(d)).collect();
    let alg = model.algebraic(1).to_vec();
    let outside = (0..model.dim(2)).find(|i| !alg.contains(i)).expect("H^2 is larger than A^1");
    matrices[2].set(outside, outside, rat(2, 1));
    let action = CorrespondenceAction::new(model.clone(), matrices, false, None)?;
    Ok(ModelBundle::new(model.clone())
        .with_action("transcendental", action)
        .with_action(IDENTITY, CorrespondenceAction::identity(model)))
}

/// Every geometric built-in used by the checks: `P^1..P^4`, an ordinary
/// and a supersingular elliptic curve, and a product of two curves.
pub fn builtin_bundles() -> Result<Vec<(String, ModelBundle)>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("P^{n} over F_3"), projective_space_model(n, 3)?));
    }
    let c5 = ec_point_count(&CurveSpec::new(5, 1, 1)?)?;
    out.push(("E: y^2 = x^3 + x + 1 over F_5".into(), elliptic_model(c5.q, c5.trace)?));
    out.push(("supersingular trace 0 over F_7".into(), elliptic_model(7, 0)?));
    let c7a = ec_point_count(&CurveSpec::new(7, 1, 3)?)?;
    let c7b = ec_point_count(&CurveSpec::new(7, 2, 1)?)?;
    out.push(("E1 x E2 over F_7".into(), abelian_product_model(&[c7a, c7b])?));
    let e5 = elliptic_model(c5.q, c5.trace)?;
    out.push(("E x E (Künneth) over F_5".into(), kunneth_bundle(&e5, &e5)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::validate_model;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn general_form_over_f2() {
        // y^2 + y = x^3: supersingular, 3 points
        assert_eq!(general_weierstrass_count(2, [0, 0, 1, 0, 0]).unwrap().n, 3);
        // y^2 + xy = x^3 + 1: 4 points
        assert_eq!(general_weierstrass_count(2, [1, 0, 0, 0, 1]).unwrap().n, 4);
        assert!(general_weierstrass_count(2, [0, 0, 0, 0, 0]).is_err());
        // agrees with the short form away from 2 and 3
        let c = CurveSpec::new(13, 2, 5).unwrap();
        assert_eq!(general_weierstrass_count(13, [0, 0, 0, 2, 5]).unwrap(), ec_point_count(&c).unwrap());
    }

    #[test]
    fn tiny_curve_by_hand() {
        // y^2 = x^3 + x over F_3: x=0 -> 0 (1 point), x=1 -> 2 (non-residue),
        // x=2 -> 10 = 1 (2 points); plus infinity.
        let c = CurveSpec::new(3, 1, 0).unwrap();
        let r = ec_point_count(&c).unwrap();
        assert_eq!(r.n, 4);
        assert_eq!(r.trace, 0);
        assert_eq!(ec_point_count_naive(&c).unwrap(), r);
    }

    #[test]
    fn counts_agree_on_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in primes_up_to(30).into_iter().filter(|&p| p >= 3) {
            for _ in 0..5 {
                let c = random_curve(p, &mut rng).unwrap();
                assert_eq!(ec_point_count(&c).unwrap(), ec_point_count_naive(&c).unwrap());
            }
        }
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(CurveSpec::new(4, 1, 1).is_err());
        assert!(CurveSpec::new(2, 1, 1).is_err());
        assert!(CurveSpec::new(5, 0, 0).is_err());
        assert!(elliptic_model(5, 5).is_err());
        assert!(projective_space_model(2, 1).is_err());
        let mixed = [CountResult { q: 5, n: 9, trace: -3 }, CountResult { q: 7, n: 8, trace: 0 }];
        assert!(abelian_product_model(&mixed).is_err());
    }

    #[test]
    fn every_builtin_validates() {
        for (name, b) in builtin_bundles().unwrap() {
            let r = validate_model(&b.model);
            assert!(r.valid, "{name}: {:?}", r.failures);
            assert!(b.frobenius().is_some(), "{name}");
        }
        for b in [synthetic_non_semisimple().unwrap(), synthetic_ddc_failure().unwrap()] {
            assert!(validate_model(&b.model).valid);
        }
    }

    #[test]
    fn dimensions_of_products() {
        let e = elliptic_model(5, 2).unwrap();
        let ee = kunneth_bundle(&e, &e).unwrap();
        assert_eq!(ee.model.dims(), &[1, 4, 6, 4, 1]);
        let a = abelian_product_from_traces(5, &[2, -1]).unwrap();
        assert_eq!(a.model.dims(), &[1, 4, 6, 4, 1]);
        assert!(is_abelian_type(&a.model) && is_abelian_type(&ee.model));
        assert!(!is_abelian_type(&projective_space_model(2, 3).unwrap().model));
    }

    #[test]
    fn frobenius_commutes_with_multiplication() {
        let a = abelian_product_from_traces(7, &[1, -3]).unwrap();
        let f = a.frobenius().unwrap();
        let m = mult_by_m(&a.model, 3).unwrap();
        for k in 0..=a.model.top() {
            assert_eq!(f.matrix(k) * m.matrix(k), m.matrix(k) * f.matrix(k));
        }
        assert!(mult_by_m(&projective_space_model(1, 3).unwrap().model, 2).is_err());
    }
}
