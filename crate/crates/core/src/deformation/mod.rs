//! Deformations of the monomial canonical curve: obstruction equations,
//! `T^{1,−}`, the quadratic cone and the reduced quasi-cone, plus an
//! independent `T¹` computation for the semigroup ring.

mod cone;
mod engine;
mod oracle;
mod t1;

use thiserror::Error;

use crate::canonical_ideal::CanonicalError;

pub use cone::{linear_solution, quadratic_cone, reduce_ideal, ConeIdeal, ConeKind};
pub use engine::{compute_rho, EquationId, RhoEngine, RhoSystem};
pub use oracle::{minimal_presentation, t1_oracle, Binomial};
pub use t1::{t1_minus, t1_minus_with, PivotPreference, T1Minus, WeightBlock};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error("reduction for relation {relation:?} did not terminate")]
    NonTermination { relation: (u32, usize) },
    #[error("substitution of eliminated coefficients did not stabilize after {rounds} rounds")]
    SubstitutionCycle { rounds: usize },
}
