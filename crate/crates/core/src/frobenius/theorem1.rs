use serde::Serialize;

use super::fractional::{fractional_power, FractionalConfig};
use crate::correspondence::CorrespondenceAction;
use crate::linalg::{ratio_to_f64, ComplexMatrix, Conjugation, RootConfig};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Config {
    /// Exponents `s <= 0`.
    pub s_values: Vec<f64>,
    pub t_values: Vec<u32>,
    pub modes: Vec<Conjugation>,
    pub tol: f64,
    pub fractional: FractionalConfig,
    pub roots: RootConfig,
}

impl Default for Theorem1Config {
    fn default() -> Self {
        Self {
            s_values: vec![-3.0, -2.0, -1.0, 0.0],
            t_values: (1..=5).collect(),
            modes: Conjugation::ALL.to_vec(),
            tol: 1e-9,
            fractional: FractionalConfig::default(),
            roots: RootConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Point {
    pub s: f64,
    pub t: u32,
    pub k: usize,
    pub mode: Conjugation,
    pub sp_b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// `sp(B)^{-1/2}` against `q^{sk/2} / 2`.
    pub lower_bound: f64,
    pub lower_bound_holds: bool,
    /// Whether `sp(B) <= (1 + sp(A^{-s}))^2` held for this `A^{-s}`.
    pub lemma1_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModeConstant {
    pub mode: Conjugation,
    pub t: u32,
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub q: u64,
    pub a: f64,
    pub points: Vec<Theorem1Point>,
    /// Running maximum of the ratio over the lattice truncated at `t`.
    pub c_by_t: Vec<ModeConstant>,
    /// Modes in which the spectral bound held at every lattice point.
    pub lemma1_modes: Vec<Conjugation>,
    /// Running constant never grows with `t`, checked in `lemma1_modes`.
    pub c_non_increasing: bool,
    /// The lower bound held at every point whose mode passed the spectral bound.
    pub lower_bound_consistent: bool,
}

/// `A^{-s}` on `H^k`, exact when `s` is an integer.
fn negative_power(frob: &CorrespondenceAction, k: usize, s: f64, cfg: &FractionalConfig) -> Result<ComplexMatrix> {
    if s.fract() == 0.0 {
        Ok(ComplexMatrix::from_rational(&frob.matrix(k).pow_signed(-s as i64)?))
    } else {
        Ok(fractional_power(frob, k, -s, cfg)?.matrix)
    }
}

/// Scans `sp(B)^{-1/2} ‖(f^t)^*|H^k‖` against `max_j q^{sj} a^{tj}` over a
/// lattice of `(s, t, k)` with `B = A^{-s} (A^{-s})^τ`.
pub fn theorem1_lattice(f: &CorrespondenceAction, frob: &CorrespondenceAction, cfg: &Theorem1Config) -> Result<Theorem1Report> {
    if !std::sync::Arc::ptr_eq(f.model(), frob.model()) && f.model() != frob.model() {
        return Err(Error::ModelMismatch);
    }
    let q = frob.model().q().ok_or_else(|| Error::Unsupported("model has no field size q".into()))?;
    let a = ratio_to_f64(f.polarization().ok_or_else(|| Error::InvalidAction("action is not polarized".into()))?);
    if cfg.s_values.iter().any(|s| !(s.is_finite() && *s <= 0.0)) {
        return Err(Error::Spec("lattice exponents s must be finite and <= 0".into()));
    }
    if cfg.t_values.contains(&0) {
        return Err(Error::Spec("lattice iterates t must be >= 1".into()));
    }
    let n = f.model().n();
    let top = f.model().top();
    let qf = q as f64;
    let mut t_sorted = cfg.t_values.clone();
    t_sorted.sort_unstable();
    t_sorted.dedup();
    let iterate_norms: Vec<Vec<f64>> = t_sorted
        .iter()
        .map(|&t| {
            let ft = f.pow(t);
            (0..=top).map(|k| ratio_to_f64(&ft.norm_h(k))).collect()
        })
        .collect();

    let mut points = Vec::new();
    for &s in &cfg.s_values {
        for k in 0..=top {
            if f.model().dim(k) == 0 {
                continue;
            }
            let power = negative_power(frob, k, s, &cfg.fractional)?;
            let sp_power = power.spectral_radius(&cfg.roots)?;
            for &mode in &cfg.modes {
                let b = &power * &power.tau(mode);
                let sp_b = b.spectral_radius(&cfg.roots)?;
                if sp_b == 0.0 {
                    return Err(Error::Degenerate(format!("sp(B) vanishes on H^{k}")));
                }
                let inv_sqrt = sp_b.powf(-0.5);
                let lower_bound = qf.powf(s * k as f64 / 2.0) / 2.0;
                let lemma1_holds = sp_b <= (1.0 + sp_power).powi(2) * (1.0 + cfg.tol);
                for (ti, &t) in t_sorted.iter().enumerate() {
                    let lhs = inv_sqrt * iterate_norms[ti][k];
                    let rhs = (0..=n)
                        .map(|j| qf.powf(s * j as f64) * a.powf(t as f64 * j as f64))
                        .fold(0.0, f64::max);
                    points.push(Theorem1Point {
                        s,
                        t,
                        k,
                        mode,
                        sp_b,
                        lhs,
                        rhs,
                        ratio: lhs / rhs,
                        lower_bound,
                        lower_bound_holds: inv_sqrt >= lower_bound * (1.0 - cfg.tol),
                        lemma1_holds,
                    });
                }
            }
        }
    }

    let lemma1_modes: Vec<Conjugation> =
        cfg.modes.iter().copied().filter(|m| points.iter().filter(|p| p.mode == *m).all(|p| p.lemma1_holds)).collect();
    let mut c_by_t = Vec::new();
    let mut c_non_increasing = true;
    for &mode in &cfg.modes {
        let mut previous: Option<f64> = None;
        for &t in &t_sorted {
            let c = points.iter().filter(|p| p.mode == mode && p.t <= t).map(|p| p.ratio).fold(0.0, f64::max);
            if let Some(prev) = previous {
                if lemma1_modes.contains(&mode) && c > prev * (1.0 + cfg.tol) {
                    c_non_increasing = false;
                }
            }
            previous = Some(c);
            c_by_t.push(ModeConstant { mode, t, c });
        }
    }
    let lower_bound_consistent = points.iter().filter(|p| p.lemma1_holds).all(|p| p.lower_bound_holds);
    Ok(Theorem1Report { q, a, points, c_by_t, lemma1_modes, c_non_increasing, lower_bound_consistent })
}

/// One lattice point: both conjugation modes at `(s, t, k)`.
pub fn theorem1_inequality(
    f: &CorrespondenceAction,
    frob: &CorrespondenceAction,
    s: f64,
    t: u32,
    k: usize,
    cfg: &Theorem1Config,
) -> Result<Vec<Theorem1Point>> {
    if k > f.model().top() {
        return Err(Error::Degree { k, l: 0, top: f.model().top() });
    }
    let single = Theorem1Config { s_values: vec![s], t_values: vec![t], ..cfg.clone() };
    Ok(theorem1_lattice(f, frob, &single)?.points.into_iter().filter(|p| p.k == k).collect())
}
