//! Graded cohomology rings `H^0 ⊕ … ⊕ H^{2n}` over the rationals.
//!
//! A model fixes a basis of every graded piece. Products are stored as dense
//! structure constants, integration is a linear functional on the top degree,
//! and the algebraic subspaces `A^j ⊆ H^{2j}` are coordinate subspaces given
//! by basis indices.

mod exterior;
mod kunneth;
mod model;
mod validate;

pub use exterior::{exterior_model, exterior_power_matrices, pfaffian, standard_symplectic, subsets};
pub use kunneth::{kunneth, kunneth_matrices, point_model};
pub use model::{CupEntry, GradedVector, ModelParts, VarietyModel};
pub use validate::{validate_model, ValidationFailure, ValidationReport};
