//! Exact coefficient fields, sparse graded polynomials, the X-monomial
//! order, and dense linear algebra.

mod field;
mod linalg;
mod order;
mod poly;

pub use field::{fmt_rational, Field, Fp, FpA, FpB, Rational, PRIME_A, PRIME_B};
pub use linalg::{solve_linear, LinearSolution, Matrix};
pub use order::{monomial_compare, OrderError};
pub use poly::{graded_component, graded_components, GradedPoly, Monomial, Poly, VarInfo, VarKind, VarTable};
