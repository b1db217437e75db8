//! Exact integer linear algebra.

mod abelian;
mod complex;
pub mod lattice;
mod matrix;
mod smith;

pub use abelian::{cokernel, FgAbelianGroup};
pub use complex::{CochainComplex, PresentedCochainComplex};
pub use lattice::{AbelianMap, IntegerSolver, Subquotient};
pub use matrix::IntegerMatrix;
pub(crate) use matrix::{bigint_from_json, bigint_to_json};
pub use smith::{invariant_factors, rank, smith_normal_form, SmithDecomposition};
