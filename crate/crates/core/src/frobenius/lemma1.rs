//! Auditing `sp(A A^τ) <= (1 + sp(A))^2` for complex matrices.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::linalg::{ComplexMatrix, Conjugation, RootConfig};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Lemma1Input {
    Matrix { label: String, matrix: ComplexMatrix },
    Jordan { lambda: Complex64, size: usize },
}

impl Lemma1Input {
    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Self::Matrix { matrix, .. } => matrix.clone(),
            Self::Jordan { lambda, size } => ComplexMatrix::jordan_block(*lambda, *size),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Matrix { label, .. } => label.clone(),
            Self::Jordan { lambda, size } => format!("J({}{:+}i, {size})", lambda.re, lambda.im),
        }
    }
}

/// Closed-form entry of `J J^*` for an upper Jordan block `J` of size `n`.
pub fn jordan_formula_entry(lambda: Complex64, n: usize, i: usize, j: usize) -> Complex64 {
    let abs2 = lambda.norm_sqr();
    match (i, j) {
        _ if i == j && i + 1 < n => Complex64::new(1.0 + abs2, 0.0),
        _ if i == j => Complex64::new(abs2, 0.0),
        _ if j == i + 1 => lambda.conj(),
        _ if i == j + 1 => lambda,
        _ => Complex64::new(0.0, 0.0),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryCheck {
    pub row: usize,
    pub col: usize,
    pub computed: [f64; 2],
    pub formula: [f64; 2],
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Audit {
    pub input: String,
    pub mode: Conjugation,
    pub dimension: usize,
    pub sp_a: f64,
    pub sp_b: f64,
    pub bound: f64,
    pub holds: bool,
    /// Entry-by-entry comparison with the closed form; only for Jordan inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<EntryCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries_match: Option<bool>,
}

pub fn lemma1_audit(input: &Lemma1Input, mode: Conjugation, tol: f64, cfg: &RootConfig) -> Result<Lemma1Audit> {
    let a = input.matrix();
    if !a.is_square() {
        return Err(Error::Spec("lemma1 input must be square".into()));
    }
    let b = &a * &a.tau(mode);
    let sp_a = a.spectral_radius(cfg)?;
    let sp_b = b.spectral_radius(cfg)?;
    let bound = (1.0 + sp_a).powi(2);
    let entries = match input {
        Lemma1Input::Jordan { lambda, size } => Some(
            (0..*size)
                .flat_map(|i| (0..*size).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let computed = b.get(i, j);
                    let formula = jordan_formula_entry(*lambda, *size, i, j);
                    EntryCheck {
                        row: i,
                        col: j,
                        computed: [computed.re, computed.im],
                        formula: [formula.re, formula.im],
                        matches: computed == formula,
                    }
                })
                .collect::<Vec<_>>(),
        ),
        Lemma1Input::Matrix { .. } => None,
    };
    let entries_match = entries.as_ref().map(|e| e.iter().all(|c| c.matches));
    Ok(Lemma1Audit {
        input: input.label(),
        mode,
        dimension: a.rows(),
        sp_a,
        sp_b,
        bound,
        holds: sp_b <= bound * (1.0 + tol),
        entries,
        entries_match,
    })
}

/// Square matrix with i.i.d. standard complex Gaussian entries
/// (real and imaginary parts `N(0, 1/2)`).
pub fn random_complex_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let data = (0..dim * dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect();
    ComplexMatrix::new(dim, dim, data).expect("finite samples")
}

/// `count` random inputs from a ChaCha stream; dimensions uniform in `1..=max_dim`.
pub fn lemma1_random(count: usize, max_dim: usize, seed: u64) -> Result<Vec<Lemma1Input>> {
    if max_dim == 0 {
        return Err(Error::Spec("random dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|i| {
            let dim = rng.random_range(1..=max_dim);
            Lemma1Input::Matrix { label: format!("random[{i}] seed {seed}"), matrix: random_complex_matrix(&mut rng, dim) }
        })
        .collect())
}

pub fn builtin_cases() -> Vec<Lemma1Input> {
    let z = Complex64::new(0.0, 0.0);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    vec![
        Lemma1Input::Matrix {
            label: "[[0,100],[0,0]]".into(),
            matrix: ComplexMatrix::from_rows(vec![vec![z, c(100.0, 0.0)], vec![z, z]]).expect("finite"),
        },
        Lemma1Input::Matrix {
            label: "[[1,i],[i,-1]]".into(),
            matrix: ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(-1.0, 0.0)]])
                .expect("finite"),
        },
        Lemma1Input::Jordan { lambda: z, size: 2 },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRadius {
    pub sp: f64,
    /// `|Tr(B^m)|^{1/m}` for `m = 1..=T`.
    pub values: Vec<f64>,
    /// Max over the second half of the sequence.
    pub limsup_estimate: f64,
    pub final_gap: f64,
    pub converged: bool,
}

/// Compares `|Tr(B^m)|^{1/m}` against `sp(B)` for `B = A A^τ`.
pub fn trace_radius_identity(a: &ComplexMatrix, mode: Conjugation, t_max: usize, cfg: &RootConfig) -> Result<TraceRadius> {
    if t_max == 0 {
        return Err(Error::Spec("trace sequence needs T >= 1".into()));
    }
    let b = &a.clone() * &a.tau(mode);
    let sp = b.spectral_radius(cfg)?;
    let scale = b.norm_1();
    let mut values = Vec::with_capacity(t_max);
    if scale == 0.0 {
        values.resize(t_max, 0.0);
    } else {
        let c = b.scale(Complex64::new(1.0 / scale, 0.0));
        let mut p = ComplexMatrix::identity(b.rows());
        for m in 1..=t_max {
            p = &p * &c;
            values.push(scale * p.trace().norm().powf(1.0 / m as f64));
        }
    }
    let tail = &values[t_max / 2..];
    let limsup_estimate = tail.iter().copied().fold(0.0, f64::max);
    let final_gap = (values[t_max - 1] - sp).abs();
    Ok(TraceRadius { sp, values, limsup_estimate, final_gap, converged: final_gap <= 1e-3 * sp.max(1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RootConfig {
        RootConfig::default()
    }

    #[test]
    fn jordan_entries_in_adjoint_mode() {
        for (re, im) in [(0.0, 0.0), (0.5, -0.25), (-2.0, 1.0), (0.0, 3.0)] {
            for size in 1..=5 {
                let input = Lemma1Input::Jordan { lambda: Complex64::new(re, im), size };
                let audit = lemma1_audit(&input, Conjugation::ConjugateTranspose, 1e-9, &cfg()).unwrap();
                assert_eq!(audit.entries_match, Some(true), "{audit:?}");
                assert!(audit.holds);
            }
        }
    }

    #[test]
    fn entrywise_mode_breaks_the_closed_form() {
        let input = Lemma1Input::Jordan { lambda: Complex64::new(1.0, 1.0), size: 3 };
        let audit = lemma1_audit(&input, Conjugation::Entrywise, 1e-9, &cfg()).unwrap();
        assert_eq!(audit.entries_match, Some(false));
    }

    #[test]
    fn builtin_verdicts() {
        let cases = builtin_cases();
        let ct = |i: usize, mode| lemma1_audit(&cases[i], mode, 1e-9, &cfg()).unwrap();
        // nilpotent with a large entry: A A^* has radius 10^4
        let a = ct(0, Conjugation::ConjugateTranspose);
        assert!(!a.holds && (a.sp_b - 1e4).abs() < 1e-6);
        assert!(ct(0, Conjugation::Entrywise).holds);
        // nilpotent, A·conj(A) = [[2, -2i], [2i, 2]] with eigenvalues 4 and 0
        let b = ct(1, Conjugation::Entrywise);
        assert_eq!(b.sp_a, 0.0);
        assert!(!b.holds && (b.sp_b - 4.0).abs() < 1e-9);
        assert!(ct(2, Conjugation::ConjugateTranspose).holds);
    }

    #[test]
    fn random_stream_is_reproducible() {
        let a = lemma1_random(5, 8, 9).unwrap();
        let b = lemma1_random(5, 8, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| (1..=8).contains(&x.matrix().rows())));
        assert_ne!(a, lemma1_random(5, 8, 10).unwrap());
    }

    #[test]
    fn trace_radius_for_hermitian_b() {
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
        .unwrap();
        let t = trace_radius_identity(&a, Conjugation::ConjugateTranspose, 200, &cfg()).unwrap();
        assert!(t.converged, "{t:?}");
        assert!(t.limsup_estimate >= t.sp - 1e-9);
    }

    #[test]
    fn trace_radius_flags_rotation() {
        // A is the 45 degree rotation, so A·conj(A) is the quarter turn with
        // eigenvalues ±i and every odd trace vanishes
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
            vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        ])
        .unwrap();
        let t = trace_radius_identity(&a, Conjugation::Entrywise, 9, &cfg()).unwrap();
        assert!((t.sp - 1.0).abs() < 1e-12);
        assert!(!t.converged);
        assert!(t.values[0] < 1e-12);
        assert!((t.limsup_estimate - 2f64.powf(1.0 / 6.0)).abs() < 1e-12);
    }
}
