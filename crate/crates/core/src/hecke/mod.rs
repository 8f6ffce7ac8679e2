//! Numerical verification over `K = ℚ(i)`, `F = ℚ`, `p = 2`.

mod character;
mod estimate;
mod gaussian;
mod group_basis;
mod ideals;
mod modulus;

pub use character::{
    dirichlet_characters, dirichlet_via_norm, unit_trivial_characters, DirichletCharacter, GaussianHeckeChar,
};
pub use estimate::{numeric_triple_estimate, NumericEstimate, NumericFactor};
pub use gaussian::GaussianInt;
pub use group_basis::GroupBasis;
pub use ideals::{
    character_sum, character_sum_from_histogram, classify_pole, classify_pole_from_histogram, classify_ratio,
    residue_histogram, IdealStream, PoleClass, PoleProbe, CANCELLATION_CEILING, DEFAULT_TAU, DEFAULT_X, MIN_CLASSIFY_X,
};
pub use modulus::{GaussianModulus, MAX_MODULUS_NORM};
