//! Cuspidal data over F, their base change to K, and automorphic induction.

use crate::error::{Error, Result};
use crate::label::{CuspidalLabel, RepModel};

/// What base change to K does to a cuspidal representation of `GL_n` over F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseChange {
    /// `π_K` is cuspidal and equal to the given (σ-invariant) label.
    StaysCuspidal(CuspidalLabel),
    /// `π` is induced from K: `π_K = ⊞_j σ^j(θ)` with θ not σ-invariant.
    InducedFrom(CuspidalLabel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalDatumF {
    degree: u32,
    behavior: BaseChange,
}

impl CuspidalDatumF {
    /// A base change is Galois invariant, so the label must be σ-fixed.
    pub fn stays_cuspidal(model: &RepModel, label: CuspidalLabel) -> Result<Self> {
        if !model.is_invariant(&label)? {
            return Err(Error::Precondition(format!(
                "base change {label:?} of a representation over F must be sigma-invariant"
            )));
        }
        Ok(Self { degree: label.degree(), behavior: BaseChange::StaysCuspidal(label) })
    }

    /// Rejects σ-invariant θ: the induced representation would not be cuspidal.
    pub fn induced_from(model: &RepModel, theta: CuspidalLabel) -> Result<Self> {
        if model.is_invariant(&theta)? {
            return Err(Error::Precondition(format!("{theta:?} is sigma-invariant; its induction is not cuspidal")));
        }
        Ok(Self { degree: theta.degree() * model.p(), behavior: BaseChange::InducedFrom(theta) })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn behavior(&self) -> &BaseChange {
        &self.behavior
    }

    pub fn induced_theta(&self) -> Option<&CuspidalLabel> {
        match &self.behavior {
            BaseChange::InducedFrom(t) => Some(t),
            BaseChange::StaysCuspidal(_) => None,
        }
    }
}

/// A formal isobaric sum of cuspidal labels over K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsobaricRep {
    constituents: Vec<CuspidalLabel>,
}

impl IsobaricRep {
    pub fn new(constituents: Vec<CuspidalLabel>) -> Self {
        Self { constituents }
    }

    pub fn constituents(&self) -> &[CuspidalLabel] {
        &self.constituents
    }

    pub fn len(&self) -> usize {
        self.constituents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constituents.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.constituents.iter().map(CuspidalLabel::degree).sum()
    }

    /// Multiset equality up to isomorphism of constituents.
    pub fn is_isomorphic(&self, model: &RepModel, other: &IsobaricRep) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        let mut used = vec![false; other.len()];
        for a in &self.constituents {
            let mut found = false;
            for (i, b) in other.constituents.iter().enumerate() {
                if !used[i] && model.is_isomorphic(a, b)? {
                    used[i] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn base_change(model: &RepModel, pi: &CuspidalDatumF) -> Result<IsobaricRep> {
    match &pi.behavior {
        BaseChange::StaysCuspidal(l) => Ok(IsobaricRep::new(vec![l.clone()])),
        BaseChange::InducedFrom(theta) => galois_orbit(model, theta),
    }
}

fn galois_orbit(model: &RepModel, theta: &CuspidalLabel) -> Result<IsobaricRep> {
    model
        .cyclic()
        .shifts()
        .map(|j| model.galois_shift(theta, j as i64))
        .collect::<Result<Vec<_>>>()
        .map(IsobaricRep::new)
}

/// `AI(χ)` over F for a character χ of K: cuspidal of degree `p` iff χ is
/// not σ-invariant; otherwise an isobaric sum of `p` characters of F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphicInduction {
    chi: CuspidalLabel,
    degree: u32,
    cuspidal: bool,
}

pub fn automorphic_induction(model: &RepModel, chi: &CuspidalLabel) -> Result<AutomorphicInduction> {
    if chi.degree() != 1 {
        return Err(Error::InvalidTwist(chi.degree()));
    }
    Ok(AutomorphicInduction { chi: chi.clone(), degree: model.p(), cuspidal: !model.is_invariant(chi)? })
}

impl AutomorphicInduction {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_cuspidal(&self) -> bool {
        self.cuspidal
    }

    pub fn chi(&self) -> &CuspidalLabel {
        &self.chi
    }

    /// `⊞_j σ^j(χ)`, with repetitions when χ is invariant.
    pub fn base_change(&self, model: &RepModel) -> Result<IsobaricRep> {
        galois_orbit(model, &self.chi)
    }

    pub fn as_cuspidal_datum(&self, model: &RepModel) -> Result<Option<CuspidalDatumF>> {
        if !self.cuspidal {
            return Ok(None);
        }
        CuspidalDatumF::induced_from(model, self.chi.clone()).map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianModel;

    fn z7() -> RepModel {
        AbelianModel::cyclic(7, 2, 3).unwrap().into()
    }

    fn labels(model: &RepModel, xs: &[i64]) -> Vec<CuspidalLabel> {
        xs.iter().map(|&x| model.abelian_label(&[x]).unwrap()).collect()
    }

    #[test]
    fn induced_base_change_is_orbit() {
        let m = z7();
        let pi = CuspidalDatumF::induced_from(&m, m.abelian_label(&[3]).unwrap()).unwrap();
        assert_eq!(pi.degree(), 3);
        let bc = base_change(&m, &pi).unwrap();
        assert_eq!(bc.constituents(), labels(&m, &[3, 6, 5]).as_slice());
        assert_eq!(bc.degree(), 3);
    }

    #[test]
    fn invariant_theta_rejected() {
        let m = z7();
        let err = CuspidalDatumF::induced_from(&m, m.abelian_label(&[0]).unwrap()).unwrap_err();
        assert!(err.is_precondition());
    }

    #[test]
    fn stays_cuspidal_is_singleton() {
        let m = z7();
        let pi = CuspidalDatumF::stays_cuspidal(&m, m.abelian_label(&[0]).unwrap()).unwrap();
        assert_eq!(base_change(&m, &pi).unwrap().len(), 1);
        assert!(CuspidalDatumF::stays_cuspidal(&m, m.abelian_label(&[1]).unwrap()).is_err());
    }

    #[test]
    fn induction_dichotomy_and_round_trip() {
        let m: RepModel = AbelianModel::cyclic(3, -1, 2).unwrap().into();
        let chi = m.abelian_label(&[1]).unwrap();
        let ai = automorphic_induction(&m, &chi).unwrap();
        assert!(ai.is_cuspidal());
        assert_eq!(ai.degree(), 2);
        let bc = ai.base_change(&m).unwrap();
        assert!(bc.is_isomorphic(&m, &IsobaricRep::new(labels(&m, &[1, 2]))).unwrap());
        let datum = ai.as_cuspidal_datum(&m).unwrap().unwrap();
        assert_eq!(base_change(&m, &datum).unwrap(), bc);

        let trivial = m.abelian_label(&[0]).unwrap();
        let ai0 = automorphic_induction(&m, &trivial).unwrap();
        assert!(!ai0.is_cuspidal());
        assert_eq!(ai0.degree(), 2);
        assert_eq!(ai0.as_cuspidal_datum(&m).unwrap(), None);
        assert_eq!(ai0.base_change(&m).unwrap().constituents(), labels(&m, &[0, 0]).as_slice());
    }
}
