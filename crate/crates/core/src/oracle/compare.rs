//! Calculus-versus-oracle comparison for abelian configurations.

use serde::{Deserialize, Serialize};

use super::character::{trivial_multiplicity, trivial_multiplicity_approx, CharacterOfA};
use super::group::FiniteGroupModel;
use crate::abelian::{AbelianModel, Elem};
use crate::error::{Error, Result};
use crate::matching::abelian_matching;

/// Pairing between `A` and its character group recorded in every report.
pub const PAIRING: &str = "coordinate-wise zeta_{d_i} pairing <x,a> = prod_i zeta_{d_i}^{x_i a_i}; \
the oracle group acts on A by the adjoint of sigma_matrix, so sigma_matrix is the induced action on characters";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CalculusOutcome {
    Ell(u32),
    PreconditionViolated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub model: String,
    pub pairing: String,
    pub group_order: usize,
    pub calculus: CalculusOutcome,
    pub multiplicity: u32,
    /// `None` when the calculus precondition failed.
    pub equal: Option<bool>,
    /// Result of the floating-point path, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximate_multiplicity: Option<Option<u32>>,
}

/// The oracle group attached to an abelian model.
pub fn oracle_group(model: &AbelianModel) -> Result<FiniteGroupModel> {
    let group = model.group().clone();
    let tau = model.sigma().adjoint(&group);
    FiniteGroupModel::build_semidirect(group, tau, model.p())
}

pub fn oracle_compare_with(
    model: &AbelianModel,
    group: &FiniteGroupModel,
    theta1: Elem,
    theta2: Elem,
    chi: Elem,
    float_oracle: bool,
) -> Result<OracleReport> {
    let calculus = match abelian_matching(model, theta1, theta2, chi) {
        Ok(m) => CalculusOutcome::Ell(m.ell()),
        Err(Error::Precondition(msg)) => CalculusOutcome::PreconditionViolated(msg),
        Err(e) => return Err(e),
    };
    let (l1, l2, c) = (CharacterOfA::new(theta1), CharacterOfA::new(theta2), CharacterOfA::new(chi));
    let multiplicity = trivial_multiplicity(l1, l2, c, group)?;
    let equal = match calculus {
        CalculusOutcome::Ell(ell) => Some(ell == multiplicity),
        CalculusOutcome::PreconditionViolated(_) => None,
    };
    Ok(OracleReport {
        model: model.describe(),
        pairing: PAIRING.to_string(),
        group_order: group.order(),
        calculus,
        multiplicity,
        equal,
        approximate_multiplicity: float_oracle.then(|| trivial_multiplicity_approx(l1, l2, c, group)),
    })
}

pub fn oracle_compare(model: &AbelianModel, theta1: Elem, theta2: Elem, chi: Elem) -> Result<OracleReport> {
    oracle_compare_with(model, &oracle_group(model)?, theta1, theta2, chi, false)
}
