//! Turn a parsed config into core models, labels and data.

use std::sync::Arc;

use tripole_core::hecke::{GaussianHeckeChar, GaussianModulus};
use tripole_core::{
    catalogue, AbelianModel, CuspidalDatumF, CuspidalLabel, CyclicData, GenericRelationModel, HeckeModel,
    RelationDeclaration, RepModel,
};

use crate::config::{Constituent, FamilySpec, LabelSpec, ModelBlock, RepresentationBlock, RunConfig};
use crate::error::CliError;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn require_p(config: &RunConfig) -> Result<u32, CliError> {
    config.cyclic.map(|c| c.p).ok_or_else(|| config_err("at `cyclic`: missing block (needs `p`)"))
}

pub fn model(config: &RunConfig) -> Result<RepModel, CliError> {
    let block = config.model.as_ref().ok_or_else(|| config_err("at `model`: missing block"))?;
    Ok(match block {
        ModelBlock::Abelian { factors, sigma, allow_trivial } => {
            let p = require_p(config)?;
            let m = if *allow_trivial {
                AbelianModel::new_allowing_trivial(factors.clone(), sigma.clone(), p)
            } else {
                AbelianModel::new(factors.clone(), sigma.clone(), p)
            };
            m.map_err(|e| config_err(format!("at `model`: {e}")))?.into()
        }
        ModelBlock::Generic { atoms, theta1, theta2, chi_invariant, relations } => {
            let cyclic = CyclicData::new(require_p(config)?).map_err(|e| config_err(format!("at `cyclic.p`: {e}")))?;
            let decl = RelationDeclaration {
                atoms: atoms.clone(),
                theta1: theta1.clone(),
                theta2: theta2.clone(),
                chi_invariant: *chi_invariant,
                relations: relations.clone(),
            };
            GenericRelationModel::new(cyclic, decl)
                .map_err(|e| config_err(format!("at `model.relations`: {e}")))?
                .into()
        }
        ModelBlock::Gaussian { modulus } => {
            if let Some(c) = config.cyclic.filter(|c| c.p != 2) {
                return Err(config_err(format!("at `cyclic.p`: the Gaussian model has p = 2, got {}", c.p)));
            }
            let m = GaussianModulus::from_parts(modulus[0], modulus[1])
                .map_err(|e| config_err(format!("at `model.modulus`: {e}")))?;
            HeckeModel::new(Arc::new(m)).map_err(|e| config_err(format!("at `model.modulus`: {e}")))?.into()
        }
    })
}

pub fn abelian_model(config: &RunConfig) -> Result<AbelianModel, CliError> {
    match model(config)? {
        RepModel::Abelian(m) => Ok(m),
        other => Err(config_err(format!("at `model.kind`: needs an abelian model, got {}", other.name()))),
    }
}

pub fn label(model: &RepModel, spec: &LabelSpec, at: &str) -> Result<CuspidalLabel, CliError> {
    let wrong = || config_err(format!("at `{at}`: label {spec:?} does not fit the {} model", model.name()));
    match (model, spec) {
        (RepModel::Abelian(_), LabelSpec::Coords(c)) => {
            model.abelian_label(c).map_err(|e| config_err(format!("at `{at}`: {e}")))
        }
        (RepModel::Hecke(h), LabelSpec::Coords(c)) => {
            let e = h.modulus().basis().exponent() as i64;
            let exps = c.iter().map(|&x| x.rem_euclid(e) as u32).collect();
            Ok(CuspidalLabel::hecke(GaussianHeckeChar::from_exponents(h.modulus(), exps)?))
        }
        (RepModel::Generic(_), LabelSpec::Atom(a)) => {
            model.atom(&a.atom, a.shift).map_err(|e| config_err(format!("at `{at}`: {e}")))
        }
        (RepModel::Generic(_), LabelSpec::Shift(s)) => Ok(CuspidalLabel::generic_chi(s.shift % model.p())),
        _ => Err(wrong()),
    }
}

pub fn datum(model: &RepModel, c: &Constituent, at: &str) -> Result<CuspidalDatumF, CliError> {
    match c {
        Constituent::Induced(l) => Ok(CuspidalDatumF::induced_from(model, label(model, l, &format!("{at}.induced"))?)?),
        Constituent::StaysCuspidal(l) => {
            Ok(CuspidalDatumF::stays_cuspidal(model, label(model, l, &format!("{at}.stays_cuspidal"))?)?)
        }
    }
}

pub fn representation(config: &RunConfig) -> Result<&RepresentationBlock, CliError> {
    config.representation.as_ref().ok_or_else(|| config_err("at `representation`: missing block"))
}

/// The abelian models a sweep or witness search runs over.
pub fn family(config: &RunConfig, spec: Option<&FamilySpec>) -> Result<Vec<AbelianModel>, CliError> {
    match spec {
        None => Ok(vec![abelian_model(config)?]),
        Some(FamilySpec::Catalogue(spec)) => Ok(catalogue(spec)
            .map_err(|e| config_err(format!("at `family.catalogue`: {e}")))?
            .iter()
            .map(|e| e.model())
            .collect()),
        Some(FamilySpec::Models(list)) => list
            .iter()
            .enumerate()
            .map(|(i, m)| {
                AbelianModel::new(m.factors.clone(), m.sigma.clone(), m.p)
                    .map_err(|e| config_err(format!("at `family.models[{i}]`: {e}")))
            })
            .collect(),
    }
}
