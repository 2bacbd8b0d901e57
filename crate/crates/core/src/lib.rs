//! Graded cohomology ring models of smooth projective varieties, the
//! pullback actions of correspondences on them, and spectral diagnostics
//! around dynamical degrees and Frobenius eigenvalues.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: exact rational matrices and polynomials, complex numerics.
//! * [`cohomology`]: graded rings with cup product and Poincaré pairing.
//! * [`correspondence`]: graded pullback actions, their norms and iterates.
//! * [`spectral`]: dynamical degrees, growth rates and the related checks.
//! * [`frobenius`]: Frobenius-specific tooling, fractional powers, sweeps and
//!   the Jordan-block spectral bound auditor.
//! * [`models`]: built-in constructors and the elliptic point-count oracle.
//! * [`cli`]: file formats and the `wdlab` command driver.

pub mod cli;
pub mod cohomology;
pub mod correspondence;
pub mod frobenius;
pub mod linalg;
pub mod models;
pub mod spectral;

pub use cohomology::{GradedVector, ValidationReport, VarietyModel};
pub use correspondence::CorrespondenceAction;
pub use linalg::{LinalgError, RatPolynomial, Rational, RationalMatrix};
pub use models::ModelBundle;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("degree {k} + {l} exceeds the top degree {top}")]
    Degree { k: usize, l: usize, top: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("actions live on different models")]
    ModelMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("action is not semisimple on H^{degree}")]
    NotSemisimple { degree: usize },
    #[error("eigenvector matrix on H^{degree} is ill-conditioned (condition number {condition:e})")]
    IllConditioned { degree: usize, condition: f64 },
    #[error("degenerate action: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    Spec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
