//! Cuspidal representation labels over K and the models they live in.
//!
//! Three concrete models share one interface:
//! * [`AbelianModel`]: degree-one labels in a finite abelian group,
//! * [`GenericRelationModel`]: free atoms of any degree with declared matchings,
//! * [`HeckeModel`]: finite-order Hecke characters of `ℚ(i)` for a
//!   conjugation-stable modulus, σ = complex conjugation.

use std::sync::Arc;

use crate::abelian::{AbelianModel, Elem};
use crate::cyclic::CyclicData;
use crate::error::{Error, Result};
use crate::generic::{AtomId, GenericRelationModel};
use crate::hecke::{GaussianHeckeChar, GaussianModulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Abelian(Elem),
    Atom {
        atom: AtomId,
        shift: u32,
    },
    /// The twisting character of a generic model, `σ^shift(χ)`.
    GenericChi {
        shift: u32,
    },
    Hecke(GaussianHeckeChar),
}

impl Payload {
    fn model_name(&self) -> &'static str {
        match self {
            Payload::Abelian(_) => "abelian",
            Payload::Atom { .. } | Payload::GenericChi { .. } => "generic",
            Payload::Hecke(_) => "hecke-gaussian",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspidalLabel {
    degree: u32,
    payload: Payload,
}

impl CuspidalLabel {
    pub fn abelian(e: Elem) -> Self {
        Self { degree: 1, payload: Payload::Abelian(e) }
    }

    pub fn hecke(psi: GaussianHeckeChar) -> Self {
        Self { degree: 1, payload: Payload::Hecke(psi) }
    }

    pub fn generic_chi(shift: u32) -> Self {
        Self { degree: 1, payload: Payload::GenericChi { shift } }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn as_abelian(&self) -> Option<Elem> {
        match self.payload {
            Payload::Abelian(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_hecke(&self) -> Option<&GaussianHeckeChar> {
        match &self.payload {
            Payload::Hecke(psi) => Some(psi),
            _ => None,
        }
    }
}

/// Character group of a conjugation-stable odd modulus of `ℤ[i]`, with
/// `K/F = ℚ(i)/ℚ` and `p = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeModel {
    modulus: Arc<GaussianModulus>,
    cyclic: CyclicData,
}

impl HeckeModel {
    pub fn new(modulus: Arc<GaussianModulus>) -> Result<Self> {
        if !modulus.is_self_conjugate() {
            return Err(Error::InvalidModel(format!(
                "modulus ({}) is not stable under complex conjugation",
                modulus.generator()
            )));
        }
        Ok(Self { modulus, cyclic: CyclicData::new(2)? })
    }

    pub fn modulus(&self) -> &Arc<GaussianModulus> {
        &self.modulus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepModel {
    Abelian(AbelianModel),
    Generic(GenericRelationModel),
    Hecke(HeckeModel),
}

impl From<AbelianModel> for RepModel {
    fn from(m: AbelianModel) -> Self {
        RepModel::Abelian(m)
    }
}

impl From<GenericRelationModel> for RepModel {
    fn from(m: GenericRelationModel) -> Self {
        RepModel::Generic(m)
    }
}

impl From<HeckeModel> for RepModel {
    fn from(m: HeckeModel) -> Self {
        RepModel::Hecke(m)
    }
}

impl RepModel {
    pub fn name(&self) -> &'static str {
        match self {
            RepModel::Abelian(_) => "abelian",
            RepModel::Generic(_) => "generic",
            RepModel::Hecke(_) => "hecke-gaussian",
        }
    }

    pub fn cyclic(&self) -> CyclicData {
        match self {
            RepModel::Abelian(m) => m.cyclic_data(),
            RepModel::Generic(m) => m.cyclic(),
            RepModel::Hecke(m) => m.cyclic,
        }
    }

    pub fn p(&self) -> u32 {
        self.cyclic().p()
    }

    /// Label for `σ^shift` of a named atom of the generic model.
    pub fn atom(&self, name: &str, shift: u32) -> Result<CuspidalLabel> {
        let RepModel::Generic(m) = self else {
            return Err(Error::Unsupported { op: "atom", model: self.name() });
        };
        let id = m.atom_id(name).ok_or_else(|| Error::InvalidModel(format!("unknown atom `{name}`")))?;
        Ok(CuspidalLabel {
            degree: m.atom(id).expect("resolved").degree,
            payload: Payload::Atom { atom: id, shift: shift % m.cyclic().p() },
        })
    }

    pub fn abelian_label(&self, coords: &[i64]) -> Result<CuspidalLabel> {
        match self {
            RepModel::Abelian(m) => Ok(CuspidalLabel::abelian(m.elem(coords)?)),
            _ => Err(Error::Unsupported { op: "abelian_label", model: self.name() }),
        }
    }

    fn check(&self, label: &CuspidalLabel) -> Result<()> {
        let ok = match (self, &label.payload) {
            (RepModel::Abelian(m), Payload::Abelian(e)) => e.0 < m.group().order(),
            (RepModel::Generic(m), Payload::Atom { atom, .. }) => {
                m.atom(*atom).is_some_and(|a| a.degree == label.degree)
            }
            (RepModel::Generic(_), Payload::GenericChi { .. }) => true,
            (RepModel::Hecke(m), Payload::Hecke(psi)) => {
                if psi.modulus().generator() != m.modulus.generator() {
                    return Err(Error::Precondition(format!(
                        "character mod ({}) used in the model mod ({})",
                        psi.modulus().generator(),
                        m.modulus.generator()
                    )));
                }
                true
            }
            _ => return Err(Error::ModelMismatch { left: self.name(), right: label.payload.model_name() }),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!("label {label:?} does not belong to this model")))
        }
    }

    /// Short human-readable form of a label of this model.
    pub fn describe_label(&self, label: &CuspidalLabel) -> String {
        let shifted = |name: &str, s: u32| if s == 0 { name.to_string() } else { format!("sigma^{s}({name})") };
        match (self, &label.payload) {
            (RepModel::Abelian(m), Payload::Abelian(e)) => format!("{:?}", m.group().coords(*e)),
            (RepModel::Generic(m), Payload::Atom { atom, shift }) => {
                shifted(m.atom(*atom).map_or("?", |a| a.name.as_str()), *shift)
            }
            (_, Payload::GenericChi { shift }) => shifted("chi", *shift),
            (_, Payload::Hecke(psi)) => format!("psi{:?}", psi.exponents()),
            (_, payload) => format!("{payload:?}"),
        }
    }

    /// `σ^j` applied to a label, `j` reduced mod `p`.
    pub fn galois_shift(&self, label: &CuspidalLabel, j: i64) -> Result<CuspidalLabel> {
        self.check(label)?;
        let p = self.cyclic();
        let payload = match (self, &label.payload) {
            (RepModel::Abelian(m), Payload::Abelian(e)) => Payload::Abelian(m.shift(*e, j)),
            (RepModel::Generic(_), Payload::Atom { atom, shift }) => {
                Payload::Atom { atom: *atom, shift: p.reduce(*shift as i64 + j) }
            }
            (RepModel::Generic(_), Payload::GenericChi { shift }) => {
                Payload::GenericChi { shift: p.reduce(*shift as i64 + j) }
            }
            (RepModel::Hecke(_), Payload::Hecke(psi)) => {
                let mut out = psi.clone();
                for _ in 0..p.reduce(j) {
                    out = out.conjugate()?;
                }
                Payload::Hecke(out)
            }
            _ => unreachable!("checked"),
        };
        Ok(CuspidalLabel { degree: label.degree, payload })
    }

    /// Contragredient. Generic atoms have no materialized dual.
    pub fn dual(&self, label: &CuspidalLabel) -> Result<CuspidalLabel> {
        self.check(label)?;
        let payload = match (self, &label.payload) {
            (RepModel::Abelian(m), Payload::Abelian(e)) => Payload::Abelian(m.dual(*e)),
            (RepModel::Hecke(_), Payload::Hecke(psi)) => Payload::Hecke(psi.inverse()),
            _ => return Err(Error::Unsupported { op: "dual", model: self.name() }),
        };
        Ok(CuspidalLabel { degree: label.degree, payload })
    }

    /// `label ⊗ chi` for a degree-one `chi`.
    pub fn twist(&self, label: &CuspidalLabel, chi: &CuspidalLabel) -> Result<CuspidalLabel> {
        self.check(label)?;
        self.check(chi)?;
        if chi.degree != 1 {
            return Err(Error::InvalidTwist(chi.degree));
        }
        let payload = match (self, &label.payload, &chi.payload) {
            (RepModel::Abelian(m), Payload::Abelian(a), Payload::Abelian(c)) => Payload::Abelian(m.twist(*a, *c)),
            (RepModel::Hecke(_), Payload::Hecke(a), Payload::Hecke(c)) => Payload::Hecke(a.mul(c)?),
            _ => return Err(Error::Unsupported { op: "twist", model: self.name() }),
        };
        Ok(CuspidalLabel { degree: label.degree, payload })
    }

    pub fn is_isomorphic(&self, a: &CuspidalLabel, b: &CuspidalLabel) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a.degree != b.degree {
            return Ok(false);
        }
        Ok(match (self, &a.payload, &b.payload) {
            (RepModel::Generic(m), Payload::Atom { atom: x, shift: s }, Payload::Atom { atom: y, shift: t }) => {
                x == y && (s == t || !m.is_noninvariant(*x))
            }
            (RepModel::Generic(m), Payload::GenericChi { shift: s }, Payload::GenericChi { shift: t }) => {
                s == t || m.chi_invariant()
            }
            _ => a.payload == b.payload,
        })
    }

    /// Whether σ fixes the label. Generic atoms report their declared flag.
    pub fn is_invariant(&self, label: &CuspidalLabel) -> Result<bool> {
        self.check(label)?;
        Ok(match (self, &label.payload) {
            (RepModel::Abelian(m), Payload::Abelian(e)) => m.is_invariant(*e),
            (RepModel::Generic(m), Payload::Atom { atom, .. }) => !m.is_noninvariant(*atom),
            (RepModel::Generic(m), Payload::GenericChi { .. }) => m.chi_invariant(),
            (RepModel::Hecke(_), Payload::Hecke(psi)) => psi.is_conjugation_invariant()?,
            _ => unreachable!("checked"),
        })
    }

    /// The matching relation `a ≅ (b ⊗ χ)^∨`, i.e. `L(s, a × (b ⊗ χ))` has
    /// a pole at `s = 1`. In the generic model this consults the declared
    /// relations instead of materializing the dual.
    pub fn is_matching_pair(&self, a: &CuspidalLabel, b: &CuspidalLabel, chi: &CuspidalLabel) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        self.check(chi)?;
        if chi.degree != 1 {
            return Err(Error::InvalidTwist(chi.degree));
        }
        if a.degree != b.degree {
            return Ok(false);
        }
        Ok(match (self, &a.payload, &b.payload, &chi.payload) {
            (RepModel::Abelian(m), Payload::Abelian(x), Payload::Abelian(y), Payload::Abelian(c)) => {
                let g = m.group();
                g.add(g.add(*x, *y), *c) == g.zero()
            }
            (RepModel::Hecke(_), Payload::Hecke(x), Payload::Hecke(y), Payload::Hecke(c)) => {
                x.mul(y)?.mul(c)?.is_trivial()
            }
            (
                RepModel::Generic(m),
                Payload::Atom { atom: x, shift: s },
                Payload::Atom { atom: y, shift: t },
                Payload::GenericChi { shift: c },
            ) => m.is_declared_match((*x, *s), (*y, *t), *c),
            _ => return Err(Error::Unsupported { op: "is_matching_pair", model: self.name() }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::{Atom, RelationDeclaration};

    fn z7() -> RepModel {
        AbelianModel::cyclic(7, 2, 3).unwrap().into()
    }

    fn hecke7() -> RepModel {
        let m = Arc::new(GaussianModulus::from_parts(7, 0).unwrap());
        HeckeModel::new(m).unwrap().into()
    }

    fn psi(model: &RepModel, c: i64) -> CuspidalLabel {
        let RepModel::Hecke(h) = model else { unreachable!() };
        CuspidalLabel::hecke(GaussianHeckeChar::power_of_generator(h.modulus(), c).unwrap())
    }

    fn generic() -> RepModel {
        let decl = RelationDeclaration {
            atoms: vec![
                Atom { name: "t1".into(), degree: 2, noninvariant: true },
                Atom { name: "t2".into(), degree: 2, noninvariant: true },
            ],
            theta1: "t1".into(),
            theta2: "t2".into(),
            chi_invariant: false,
            relations: vec![(0, 1)],
        };
        GenericRelationModel::new(CyclicData::new(3).unwrap(), decl).unwrap().into()
    }

    #[test]
    fn shift_by_p_is_identity() {
        let m = z7();
        let x = m.abelian_label(&[3]).unwrap();
        assert_eq!(m.galois_shift(&x, 3).unwrap(), x);
        assert_eq!(m.galois_shift(&x, 2).unwrap(), m.abelian_label(&[5]).unwrap());
        let g = generic();
        let t = g.atom("t1", 1).unwrap();
        assert_eq!(g.galois_shift(&t, 3).unwrap(), t);
        let h = hecke7();
        assert_eq!(h.galois_shift(&psi(&h, 5), 2).unwrap(), psi(&h, 5));
        assert_eq!(h.galois_shift(&psi(&h, 1), 1).unwrap(), psi(&h, 7));
    }

    #[test]
    fn hecke_dual_and_twist() {
        let h = hecke7();
        assert_eq!(h.dual(&psi(&h, 1)).unwrap(), psi(&h, 11));
        assert_eq!(h.twist(&psi(&h, 1), &psi(&h, 10)).unwrap(), psi(&h, 11));
        let x = psi(&h, 5);
        assert_eq!(h.dual(&h.dual(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn generic_dual_and_twist_unsupported() {
        let g = generic();
        let t = g.atom("t1", 0).unwrap();
        assert!(matches!(g.dual(&t), Err(Error::Unsupported { op: "dual", .. })));
        assert!(matches!(g.twist(&t, &CuspidalLabel::generic_chi(0)), Err(Error::Unsupported { op: "twist", .. })));
    }

    #[test]
    fn twist_requires_degree_one() {
        let g = generic();
        let t = g.atom("t1", 0).unwrap();
        let t2 = g.atom("t2", 0).unwrap();
        assert_eq!(g.is_matching_pair(&t, &t2, &t), Err(Error::InvalidTwist(2)));
        assert_eq!(g.twist(&t, &t2), Err(Error::InvalidTwist(2)));
    }

    #[test]
    fn isomorphism_and_mismatch() {
        let m: RepModel = AbelianModel::new(vec![3, 3], vec![vec![0, 1], vec![1, 0]], 2).unwrap().into();
        let a = m.abelian_label(&[1, 0]).unwrap();
        assert!(m.is_isomorphic(&a, &a).unwrap());
        let sa = m.galois_shift(&a, 1).unwrap();
        assert!(!m.is_isomorphic(&a, &sa).unwrap());
        let g = generic();
        assert!(!g.is_isomorphic(&g.atom("t1", 0).unwrap(), &CuspidalLabel::generic_chi(0)).unwrap());
        assert_eq!(
            m.is_isomorphic(&a, &g.atom("t1", 0).unwrap()),
            Err(Error::ModelMismatch { left: "abelian", right: "generic" })
        );
    }

    #[test]
    fn generic_matching_reads_relations() {
        let g = generic();
        let chi = CuspidalLabel::generic_chi(0);
        let t1 = g.atom("t1", 1).unwrap();
        let t2 = g.atom("t2", 0).unwrap();
        assert!(g.is_matching_pair(&t1, &t2, &chi).unwrap());
        assert!(!g.is_matching_pair(&g.atom("t1", 0).unwrap(), &t2, &chi).unwrap());
    }
}
