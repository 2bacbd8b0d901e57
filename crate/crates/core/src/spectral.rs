//! Dynamical degrees, cohomological growth rates, and the checks built on
//! them. Growth rates are reported twice: as spectral radii and as the
//! `t`-th root of the iterate norm at the last configured `t`.

use num_traits::Zero;
use serde::Serialize;

use crate::correspondence::CorrespondenceAction;
use crate::linalg::{
    format_rational, is_squarefree, jordan_profile, ratio_to_f64, spectral_radius, RootConfig, Rational,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralConfig {
    pub tol: f64,
    pub iters: usize,
    pub roots: RootConfig,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self { tol: 1e-9, iters: 200, roots: RootConfig::default() }
    }
}

fn within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthValue {
    pub index: usize,
    pub spectral: f64,
    pub empirical: f64,
    pub gap: f64,
}

/// `λ_j`: spectral radius of `M_{2j}` on `A^j`, with the iterate root.
pub fn lambda_j(f: &CorrespondenceAction, j: usize, cfg: &SpectralConfig) -> Result<GrowthValue> {
    let spectral = spectral_radius(&f.restricted(j), &cfg.roots)?;
    let empirical = f.iterate_norms_n(j, cfg.iters.max(1)).last_root();
    Ok(GrowthValue { index: j, spectral, empirical, gap: (spectral - empirical).abs() })
}

/// `χ_k`: spectral radius of `M_k`, with the iterate root.
pub fn chi_k(f: &CorrespondenceAction, k: usize, cfg: &SpectralConfig) -> Result<GrowthValue> {
    let spectral = spectral_radius(f.matrix(k), &cfg.roots)?;
    let empirical = f.iterate_norms_h(k, cfg.iters.max(1)).last_root();
    Ok(GrowthValue { index: k, spectral, empirical, gap: (spectral - empirical).abs() })
}

/// Exact: the minimal polynomial of `M_k` is squarefree.
pub fn is_semisimple(f: &CorrespondenceAction, k: usize) -> Result<bool> {
    let m = f.matrix(k);
    if m.rows() == 0 {
        return Ok(true);
    }
    Ok(is_squarefree(&m.minpoly()?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BNumbers {
    pub j: usize,
    pub b_coh: usize,
    pub b_alg: usize,
    /// `b_coh != b_alg`, which no endomorphism can produce if the
    /// semisimplicity statement holds.
    pub flagged: bool,
}

/// Largest Jordan block at the maximal modulus on `H^{2j}` and on `A^j`.
pub fn b_numbers(f: &CorrespondenceAction, j: usize, cfg: &SpectralConfig) -> Result<BNumbers> {
    let b_coh = jordan_profile(f.matrix(2 * j), &cfg.roots)?.max_block_at_max_modulus;
    let b_alg = jordan_profile(&f.restricted(j), &cfg.roots)?.max_block_at_max_modulus;
    Ok(BNumbers { j, b_coh, b_alg, flagged: b_coh != b_alg })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogConcavity {
    pub holds: bool,
    pub sequence: Vec<String>,
    /// Indices `k` with `a_k^2 < a_{k-1} a_{k+1}`.
    pub failures: Vec<usize>,
}

pub fn log_concavity_of(a: &[Rational]) -> LogConcavity {
    let failures: Vec<usize> =
        (1..a.len().saturating_sub(1)).filter(|&k| &a[k] * &a[k] < &a[k - 1] * &a[k + 1]).collect();
    LogConcavity { holds: failures.is_empty(), sequence: a.iter().map(format_rational).collect(), failures }
}

/// Exact check on `a_j = deg_j(f)`.
pub fn log_concavity(f: &CorrespondenceAction) -> LogConcavity {
    let degs: Vec<Rational> = (0..=f.model().n()).map(|j| f.deg(j)).collect();
    log_concavity_of(&degs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DdcRow {
    pub j: usize,
    pub chi: f64,
    pub lambda: f64,
    pub gap: f64,
    pub holds: bool,
}

/// `|χ_{2j} - λ_j| <= tol · max(1, λ_j)` for every `j`.
pub fn ddc_check(f: &CorrespondenceAction, tol: f64, cfg: &SpectralConfig) -> Result<Vec<DdcRow>> {
    (0..=f.model().n())
        .map(|j| {
            let chi = spectral_radius(f.matrix(2 * j), &cfg.roots)?;
            let lambda = spectral_radius(&f.restricted(j), &cfg.roots)?;
            Ok(DdcRow { j, chi, lambda, gap: (chi - lambda).abs(), holds: within(chi, lambda, tol) })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyComparison {
    pub max_chi: f64,
    pub max_lambda: f64,
    pub gap: f64,
    pub holds: bool,
}

/// Compares `max_k χ_k` over all degrees with `max_j λ_j`.
pub fn entropy_comparison(f: &CorrespondenceAction, tol: f64, cfg: &SpectralConfig) -> Result<EntropyComparison> {
    let mut max_chi: f64 = 0.0;
    for k in 0..=f.model().top() {
        max_chi = max_chi.max(spectral_radius(f.matrix(k), &cfg.roots)?);
    }
    let mut max_lambda: f64 = 0.0;
    for j in 0..=f.model().n() {
        max_lambda = max_lambda.max(spectral_radius(&f.restricted(j), &cfg.roots)?);
    }
    Ok(EntropyComparison {
        max_chi,
        max_lambda,
        gap: (max_chi - max_lambda).abs(),
        holds: within(max_chi, max_lambda, tol),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormRatio {
    pub degree: usize,
    pub norm_h: String,
    /// `‖f^*|N^j‖` for even degree `2j`; `‖f^*|N^j‖·‖f^*|N^{j+1}‖` for odd
    /// degree `2j+1`.
    pub denominator: String,
    /// Exact `(norm_h / bound)^2`, where the bound is the norm or the square root
    /// of the product.
    pub ratio_squared: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormComparison {
    pub rows: Vec<NormRatio>,
    pub c_squared: String,
    pub c: f64,
}

/// Smallest `C` with `‖f^*|H^{2j}‖ <= C ‖f^*|N^j‖` and
/// `‖f^*|H^{2j+1}‖ <= C sqrt(‖f^*|N^j‖ ‖f^*|N^{j+1}‖)` for all `j`.
pub fn norm_comparison_constant(f: &CorrespondenceAction) -> Result<NormComparison> {
    let n = f.model().n();
    let norms_n: Vec<Rational> = (0..=n).map(|j| f.norm_n(j)).collect();
    if let Some(j) = norms_n.iter().position(Zero::is_zero) {
        return Err(Error::Degenerate(format!("the action kills A^{j}")));
    }
    let mut rows = Vec::new();
    let mut c_squared = Rational::zero();
    for k in 0..=f.model().top() {
        let h = f.norm_h(k);
        let denominator =
            if k % 2 == 0 { norms_n[k / 2].clone() } else { &norms_n[k / 2] * &norms_n[k / 2 + 1] };
        let ratio_squared = if k % 2 == 0 { &(&h * &h) / &(&denominator * &denominator) } else { &(&h * &h) / &denominator };
        if ratio_squared > c_squared {
            c_squared = ratio_squared.clone();
        }
        rows.push(NormRatio {
            degree: k,
            norm_h: format_rational(&h),
            denominator: format_rational(&denominator),
            ratio: ratio_to_f64(&ratio_squared).sqrt(),
            ratio_squared: format_rational(&ratio_squared),
        });
    }
    Ok(NormComparison { rows, c: ratio_to_f64(&c_squared).sqrt(), c_squared: format_rational(&c_squared) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemisimpleRow {
    pub k: usize,
    pub semisimple: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BRow {
    pub j: usize,
    #[serde(flatten)]
    pub value: Option<BNumbers>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub norms: crate::correspondence::NormTable,
    pub lambda: Vec<GrowthValue>,
    pub chi: Vec<GrowthValue>,
    pub semisimple: Vec<SemisimpleRow>,
    pub b_numbers: Vec<BRow>,
    pub log_concavity: LogConcavity,
    pub ddc: Vec<DdcRow>,
    pub entropy: EntropyComparison,
    pub norm_comparison: Option<NormComparison>,
    pub norm_comparison_error: Option<String>,
}

pub fn spectral_report(f: &CorrespondenceAction, cfg: &SpectralConfig) -> Result<SpectralReport> {
    let n = f.model().n();
    let top = f.model().top();
    let lambda = (0..=n).map(|j| lambda_j(f, j, cfg)).collect::<Result<Vec<_>>>()?;
    let chi = (0..=top).map(|k| chi_k(f, k, cfg)).collect::<Result<Vec<_>>>()?;
    let semisimple = (0..=top)
        .map(|k| Ok(SemisimpleRow { k, semisimple: is_semisimple(f, k)? }))
        .collect::<Result<Vec<_>>>()?;
    let b = (0..=n)
        .map(|j| match b_numbers(f, j, cfg) {
            Ok(v) => BRow { j, value: Some(v), error: None },
            Err(e) => BRow { j, value: None, error: Some(e.to_string()) },
        })
        .collect();
    let (norm_comparison, norm_comparison_error) = match norm_comparison_constant(f) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(SpectralReport {
        norms: f.norm_table(),
        lambda,
        chi,
        semisimple,
        b_numbers: b,
        log_concavity: log_concavity(f),
        ddc: ddc_check(f, cfg.tol, cfg)?,
        entropy: entropy_comparison(f, cfg.tol, cfg)?,
        norm_comparison,
        norm_comparison_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::models::{
        abelian_product_from_traces, elliptic_model, mult_by_m, projective_space_model, synthetic_ddc_failure,
        synthetic_non_semisimple,
    };

    fn cfg() -> SpectralConfig {
        SpectralConfig { iters: 60, ..Default::default() }
    }

    #[test]
    fn projective_frobenius() {
        let b = projective_space_model(3, 5).unwrap();
        let f = b.frobenius().unwrap();
        for j in 0..=3 {
            let l = lambda_j(f, j, &cfg()).unwrap();
            assert!(within(l.spectral, 5f64.powi(j as i32), 1e-12));
            assert!(within(l.empirical, 5f64.powi(j as i32), 1e-12));
        }
        assert!(ddc_check(f, 1e-9, &cfg()).unwrap().iter().all(|r| r.holds));
        let e = entropy_comparison(f, 1e-9, &cfg()).unwrap();
        assert!(e.holds && within(e.max_chi, 125.0, 1e-12));
        assert_eq!(norm_comparison_constant(f).unwrap().c_squared, "1/1");
        assert!(log_concavity(f).holds);
    }

    #[test]
    fn identity_everywhere() {
        let b = elliptic_model(5, 2).unwrap();
        let id = b.action("identity").unwrap();
        for k in 0..=2 {
            assert_eq!(chi_k(id, k, &cfg()).unwrap().spectral, 1.0);
            assert!(is_semisimple(id, k).unwrap());
        }
        // H^1 has dimension 2 while A^0 = A^1 = 1: C = 2/sqrt(1·1)
        assert_eq!(norm_comparison_constant(id).unwrap().c_squared, "4/1");
    }

    #[test]
    fn elliptic_growth_is_root_q() {
        let b = elliptic_model(7, -3).unwrap();
        let c = chi_k(b.frobenius().unwrap(), 1, &cfg()).unwrap();
        assert!(within(c.spectral, 7f64.sqrt(), 1e-12));
        assert!((c.empirical - 7f64.sqrt()).abs() < 0.1);
    }

    #[test]
    fn multiplication_by_m() {
        let a = abelian_product_from_traces(5, &[1, -2]).unwrap();
        let m = mult_by_m(&a.model, -2).unwrap();
        for j in 0..=2 {
            let l = lambda_j(&m, j, &cfg()).unwrap();
            assert_eq!(l.spectral, 4f64.powi(j as i32));
            assert_eq!(b_numbers(&m, j, &cfg()).unwrap(), BNumbers { j, b_coh: 1, b_alg: 1, flagged: false });
        }
        for k in 0..=4 {
            assert!(is_semisimple(&m, k).unwrap());
        }
        assert!(ddc_check(&m, 1e-9, &cfg()).unwrap().iter().all(|r| r.holds));
    }

    #[test]
    fn synthetic_maps_are_flagged() {
        let b = synthetic_non_semisimple().unwrap();
        let f = b.action("jordan").unwrap();
        assert!(!is_semisimple(f, 2).unwrap());
        let bn = b_numbers(f, 1, &cfg()).unwrap();
        assert_eq!((bn.b_coh, bn.b_alg, bn.flagged), (2, 1, true));

        let d = synthetic_ddc_failure().unwrap();
        let rows = ddc_check(d.action("transcendental").unwrap(), 1e-9, &cfg()).unwrap();
        assert!(!rows[1].holds);
        assert_eq!((rows[1].chi, rows[1].lambda), (2.0, 1.0));
    }

    #[test]
    fn log_concavity_witness() {
        let r = log_concavity_of(&[rat(4, 1), rat(2, 1), rat(3, 1)]);
        assert!(!r.holds);
        assert_eq!(r.failures, vec![1]);
    }

    #[test]
    fn transposed_constant_matches() {
        let a = abelian_product_from_traces(3, &[2, -1]).unwrap();
        let f = a.frobenius().unwrap();
        let t = f.transpose().unwrap();
        let cf = norm_comparison_constant(f).unwrap();
        let ct = norm_comparison_constant(&t).unwrap();
        assert_eq!(cf.c_squared, ct.c_squared);
        for (r, s) in cf.rows.iter().zip(ct.rows.iter().rev()) {
            assert_eq!(r.ratio_squared, s.ratio_squared);
        }
    }

    #[test]
    fn degenerate_action_is_an_error() {
        let b = projective_space_model(1, 3).unwrap();
        let zero = crate::correspondence::CorrespondenceAction::scalars(b.model.clone(), &[rat(1, 1), rat(0, 1), rat(0, 1)], false, None).unwrap();
        assert!(matches!(norm_comparison_constant(&zero), Err(Error::Degenerate(_))));
    }
}
