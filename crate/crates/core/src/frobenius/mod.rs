//! Frobenius-specific tooling.
//!
//! Everything here works on graded actions. The checks that involve
//! `q`-powers of eigenvalue moduli use relative tolerances, because the
//! moduli grow like `q^{k/2}`.

mod eq2;
mod fractional;
mod lemma1;
mod theorem1;

pub use eq2::{default_r_grid, eq2_ratio, eq2_sweep, Eq2Row, Eq2Sweep};
pub use fractional::{exact_power, fractional_power, principal_power, FractionalConfig, FractionalPower};
pub use lemma1::{
    builtin_cases, jordan_formula_entry, lemma1_audit, lemma1_random, random_complex_matrix, trace_radius_identity,
    EntryCheck, Lemma1Audit, Lemma1Input, TraceRadius,
};
pub use theorem1::{theorem1_inequality, theorem1_lattice, ModeConstant, Theorem1Config, Theorem1Point, Theorem1Report};

use serde::Serialize;

use crate::correspondence::CorrespondenceAction;
use crate::linalg::{eigenvalues_approx, RootConfig, Rational};
use crate::models::ModelBundle;
use crate::{Error, Result};

/// The bundle's Frobenius action; the model must carry `q`.
pub fn frobenius_action(bundle: &ModelBundle) -> Result<&CorrespondenceAction> {
    if bundle.model.q().is_none() {
        return Err(Error::Unsupported("model has no field size q".into()));
    }
    bundle.frobenius().ok_or_else(|| Error::Unsupported("model has no Frobenius action".into()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeilRow {
    pub k: usize,
    pub expected: f64,
    pub moduli: Vec<f64>,
    pub max_relative_deviation: f64,
    pub holds: bool,
}

/// Every eigenvalue of `M_k` has modulus `q^{k/2}`, relative tolerance `tol`.
pub fn weil_rh_check(f: &CorrespondenceAction, q: u64, tol: f64, cfg: &RootConfig) -> Result<Vec<WeilRow>> {
    (0..=f.model().top())
        .map(|k| {
            let expected = (q as f64).powf(k as f64 / 2.0);
            let moduli: Vec<f64> = eigenvalues_approx(f.matrix(k), cfg)?.roots.iter().map(|z| z.norm()).collect();
            let dev = moduli.iter().map(|m| (m - expected).abs() / expected).fold(0.0, f64::max);
            Ok(WeilRow { k, expected, moduli, max_relative_deviation: dev, holds: dev <= tol })
        })
        .collect()
}

/// `γ_r`: multiplication by `r^k` on `H^k`.
pub fn gamma_r(model: &std::sync::Arc<crate::VarietyModel>, r: &Rational) -> Result<CorrespondenceAction> {
    if *r <= Rational::from_integer(0.into()) {
        return Err(Error::Spec("γ_r needs r > 0".into()));
    }
    let scalars: Vec<Rational> = (0..=model.top()).map(|k| num_traits::pow(r.clone(), k)).collect();
    let r2 = r * r;
    let polarization = (model.n() > 0 && r2 > Rational::from_integer(1.into())).then_some(r2);
    CorrespondenceAction::scalars(model.clone(), &scalars, true, polarization)
}
