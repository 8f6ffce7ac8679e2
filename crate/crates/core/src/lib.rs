//! Pole orders of triple product L-functions `L(s, π₁ × π₂ × AI(χ))` for a
//! cyclic extension `K/F` of prime degree `p`, computed through matching
//! pairs, with an exact character-theory oracle and a numeric Hecke probe
//! over `ℚ(i)`.

pub mod abelian;
pub mod catalogue;
pub mod cyclic;
pub mod datum;
pub mod error;
pub mod generic;
pub mod hecke;
pub mod label;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod sweep;

pub use abelian::{AbelianGroup, AbelianModel, Elem, Endomorphism};
pub use catalogue::{catalogue, CatalogueEntry, CatalogueSpec};
pub use cyclic::CyclicData;
pub use datum::{automorphic_induction, base_change, AutomorphicInduction, BaseChange, CuspidalDatumF, IsobaricRep};
pub use error::{Error, Result};
pub use generic::{validate_relations, Atom, AtomId, Diagnostic, GenericRelationModel, RelationDeclaration};
pub use label::{CuspidalLabel, HeckeModel, Payload, RepModel};
pub use matching::{
    dispatch_case, factorize, matching_matrix, rs_pole_order, triple_pole_order, DispatchCase, MatchingMatrix, RsFactor,
};
pub use par::Execution;
pub use sweep::{oracle_sweep, projection_sweep, sweep, witness_search, Budget, SweepReport, Witness};
