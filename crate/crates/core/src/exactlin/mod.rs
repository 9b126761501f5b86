//! Exact scalars, dense matrices and canonical subspaces.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{ExtensionField, Field, FieldDescriptor, PrimeField, Rationals};
pub use matrix::{rref, solve_linear, Matrix};
pub use subspace::{enumerate_vectors, projective_points, Subspace, VectorIter};
