//! Exact character-theory oracle on `A ⋊ C_p`.

pub mod character;
pub mod compare;
pub mod cyclotomic;
pub mod group;

pub use character::{
    induce_from_base, induced_character, inner_product, projection_formula_check, triple_sum, trivial_multiplicity,
    trivial_multiplicity_approx, trivial_multiplicity_sparse, CharacterOfA, ClassFunction, ProjectionChecker,
    SparseClassFunction,
};
pub use compare::{oracle_compare, oracle_compare_with, oracle_group, CalculusOutcome, OracleReport, PAIRING};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use group::{FiniteGroupModel, GroupElem};
