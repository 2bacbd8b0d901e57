use num_traits::{One, Zero};
use serde::Serialize;

use crate::correspondence::CorrespondenceAction;
use crate::linalg::{format_rational, ratio_to_f64, Rational};
use crate::{Error, Result};

/// 25 points `r = q^e`, `e = -3, -2.75, ..., 3`. Points with `e > 0` are the
/// exact binary value of the double `q^e`; points with `e < 0` are their
/// exact reciprocals, so the grid is closed under `r -> 1/r`.
pub fn default_r_grid(q: u64) -> Vec<Rational> {
    let positive: Vec<Rational> = (1..=12)
        .map(|i| {
            let e = i as f64 * 0.25;
            if e.fract() == 0.0 {
                Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(q), e as usize))
            } else {
                Rational::from_float((q as f64).powf(e)).expect("finite power")
            }
        })
        .collect();
    let mut grid: Vec<Rational> = positive.iter().rev().map(|r| r.recip()).collect();
    grid.push(Rational::one());
    grid.extend(positive);
    grid
}

/// `r^k ‖f|H^k‖ / max_j r^{2j} ‖f|N^j‖`, or `None` when every `N`-norm vanishes.
pub fn eq2_ratio(f: &CorrespondenceAction, k: usize, r: &Rational) -> Option<Rational> {
    let n = f.model().n();
    let mut den = Rational::zero();
    let mut r2j = Rational::one();
    let r2 = r * r;
    for j in 0..=n {
        let v = &r2j * f.norm_n(j);
        if v > den {
            den = v;
        }
        r2j *= &r2;
    }
    if den.is_zero() {
        return None;
    }
    Some(num_traits::pow(r.clone(), k) * f.norm_h(k) / den)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq2Row {
    pub r: String,
    pub r_approx: f64,
    pub ratios: Vec<String>,
    pub ratios_approx: Vec<f64>,
    pub max_ratio: String,
    pub max_ratio_approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq2Sweep {
    pub rows: Vec<Eq2Row>,
    pub c: String,
    pub c_approx: f64,
    pub argmax_r: f64,
    pub argmax_degree: usize,
    /// Every `(r, k)` passed `ratio(f, k, r) = ratio(fτ, 2n-k, 1/r)` exactly.
    pub transpose_identity_holds: bool,
    pub transpose_mismatches: Vec<(String, usize)>,
}

pub fn eq2_sweep(f: &CorrespondenceAction, grid: &[Rational]) -> Result<Eq2Sweep> {
    if grid.is_empty() {
        return Err(Error::Spec("empty r grid".into()));
    }
    if grid.iter().any(|r| *r <= Rational::zero()) {
        return Err(Error::Spec("r grid must be positive".into()));
    }
    let ft = f.transpose()?;
    let top = f.model().top();
    let mut rows = Vec::with_capacity(grid.len());
    let mut best: Option<(Rational, f64, usize)> = None;
    let mut mismatches = Vec::new();
    for r in grid {
        let mut ratios = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let ratio = eq2_ratio(f, k, r)
                .ok_or_else(|| Error::Degenerate("every algebraic norm vanishes".into()))?;
            if eq2_ratio(&ft, top - k, &r.recip()).as_ref() != Some(&ratio) {
                mismatches.push((format_rational(r), k));
            }
            ratios.push(ratio);
        }
        let (arg_k, max) = ratios.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).map(|(k, v)| (k, v.clone())).expect("k = 0 exists");
        if best.as_ref().is_none_or(|b| max > b.0) {
            best = Some((max.clone(), ratio_to_f64(r), arg_k));
        }
        rows.push(Eq2Row {
            r: format_rational(r),
            r_approx: ratio_to_f64(r),
            ratios_approx: ratios.iter().map(ratio_to_f64).collect(),
            ratios: ratios.iter().map(format_rational).collect(),
            max_ratio_approx: ratio_to_f64(&max),
            max_ratio: format_rational(&max),
        });
    }
    let (c, argmax_r, argmax_degree) = best.expect("non-empty grid");
    Ok(Eq2Sweep {
        rows,
        c_approx: ratio_to_f64(&c),
        c: format_rational(&c),
        argmax_r,
        argmax_degree,
        transpose_identity_holds: mismatches.is_empty(),
        transpose_mismatches: mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::models::{elliptic_model, projective_space_model};

    #[test]
    fn grid_shape() {
        let g = default_r_grid(5);
        assert_eq!(g.len(), 25);
        assert_eq!(g[12], rat(1, 1));
        assert_eq!(g[24], rat(125, 1));
        assert_eq!(g[0], rat(1, 125));
        for i in 0..25 {
            assert_eq!(g[i].recip(), g[24 - i]);
        }
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn projective_space_constant_is_one() {
        for n in 1..=4 {
            let b = projective_space_model(n, 3).unwrap();
            let s = eq2_sweep(b.frobenius().unwrap(), &default_r_grid(3)).unwrap();
            assert_eq!(s.c, "1/1");
            assert!(s.transpose_identity_holds);
        }
    }

    #[test]
    fn elliptic_peak_location() {
        let b = elliptic_model(5, 2).unwrap();
        let s = eq2_sweep(b.frobenius().unwrap(), &default_r_grid(5)).unwrap();
        assert!(s.transpose_identity_holds);
        assert!(s.c_approx.is_finite() && s.c_approx > 1.0);
        // ratio on H^1 is r·‖F|H^1‖ / max(1, 5r²), maximal at r = 5^{-1/2}
        assert!((s.argmax_r - 5f64.powf(-0.5)).abs() < 1e-12, "{}", s.argmax_r);
        assert_eq!(s.argmax_degree, 1);
    }

    #[test]
    fn rejects_bad_grid() {
        let b = elliptic_model(5, 2).unwrap();
        assert!(eq2_sweep(b.frobenius().unwrap(), &[]).is_err());
        assert!(eq2_sweep(b.frobenius().unwrap(), &[rat(0, 1)]).is_err());
    }
}
