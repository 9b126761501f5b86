//! Structurable algebras stored by structure constants, their operators and instances.

pub mod algebra;
pub mod checks;
pub mod instances;
pub mod operators;

pub use algebra::Algebra;
pub use checks::{
    check_alternative, check_epsilon_delta_formulas, check_psi_skew, check_structurable, check_v_symmetry,
    psi_gram_rank, CheckMode, PsiRank,
};
