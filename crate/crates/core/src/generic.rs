//! Free-atom model for constituents of higher degree.
//!
//! No isomorphism test exists for general cuspidal representations, so the
//! user declares which pairs `(j, k)` satisfy
//! `σ^j(θ₂)^∨ ⊗ χ^{-1} ≅ σ^k(θ₁)`. The validator accepts a declaration iff
//! it is consistent with the constraints forced by Galois non-invariance and
//! nothing more.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicData;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub name: String,
    pub degree: u32,
    /// Declared not σ-invariant. Required for atoms used in `InducedFrom`.
    pub noninvariant: bool,
}

/// Unvalidated input for a [`GenericRelationModel`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDeclaration {
    pub atoms: Vec<Atom>,
    pub theta1: String,
    pub theta2: String,
    #[serde(default)]
    pub chi_invariant: bool,
    /// Pairs `(j, k)` with `σ^j(θ₂)^∨ ⊗ χ^{-1} ≅ σ^k(θ₁)`.
    #[serde(default)]
    pub relations: Vec<(u32, u32)>,
}

/// Machine-readable reason a relation declaration was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    UnknownAtom {
        name: String,
    },
    ZeroDegree {
        atom: String,
    },
    ShiftOutOfRange {
        pair: (u32, u32),
        p: u32,
    },
    DegreeMismatch {
        theta1_degree: u32,
        theta2_degree: u32,
        relations: usize,
    },
    /// `(j,k), (j,m)` ⇒ `σ^{k−m}(θ₁) ≅ θ₁`.
    RowConflict {
        row: u32,
        columns: (u32, u32),
    },
    /// `(j,k), (i,k)` ⇒ `σ^{j−i}(θ₂) ≅ θ₂`.
    ColumnConflict {
        column: u32,
        rows: (u32, u32),
    },
    /// σ-invariant χ maps the relation `from` to `missing`.
    MissingDiagonalShift {
        from: (u32, u32),
        missing: (u32, u32),
    },
    /// A σ-invariant constituent only has the shift 0.
    InvariantShifted {
        pair: (u32, u32),
        atom: String,
    },
    /// With `θ₁ = θ₂` the relation is symmetric in `(j, k)`.
    AsymmetricSelfPair {
        pair: (u32, u32),
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnknownAtom { name } => write!(f, "unknown atom `{name}`"),
            Diagnostic::ZeroDegree { atom } => write!(f, "atom `{atom}` has degree 0"),
            Diagnostic::ShiftOutOfRange { pair: (j, k), p } => {
                write!(f, "({j},{k}) has a shift outside 0..{p}")
            }
            Diagnostic::DegreeMismatch { theta1_degree, theta2_degree, relations } => write!(
                f,
                "{relations} relation(s) declared between constituents of degrees \
                 {theta1_degree} and {theta2_degree}"
            ),
            Diagnostic::RowConflict { row, columns: (k, m) } => write!(
                f,
                "({row},{k}),({row},{m}) => sigma^{}(theta1) ~ theta1 contradicts non-invariance",
                *k as i64 - *m as i64
            ),
            Diagnostic::ColumnConflict { column, rows: (j, i) } => write!(
                f,
                "({j},{column}),({i},{column}) => sigma^{}(theta2) ~ theta2 contradicts non-invariance",
                *j as i64 - *i as i64
            ),
            Diagnostic::MissingDiagonalShift { from: (j, k), missing: (a, b) } => {
                write!(f, "chi is sigma-invariant: ({j},{k}) forces ({a},{b}), which is missing")
            }
            Diagnostic::InvariantShifted { pair: (j, k), atom } => {
                write!(f, "({j},{k}) shifts the sigma-invariant atom `{atom}`")
            }
            Diagnostic::AsymmetricSelfPair { pair: (j, k) } => {
                write!(f, "theta1 = theta2 and ({j},{k}) is declared without ({k},{j})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRelationModel {
    cyclic: CyclicData,
    atoms: Vec<Atom>,
    theta1: AtomId,
    theta2: AtomId,
    chi_invariant: bool,
    relations: BTreeSet<(u32, u32)>,
}

fn lookup(atoms: &[Atom], name: &str) -> Option<AtomId> {
    atoms.iter().position(|a| a.name == name).map(|i| AtomId(i as u32))
}

/// Check a declaration against the constraints a consistent set of
/// matchings must satisfy.
pub fn validate_relations(cyclic: CyclicData, decl: &RelationDeclaration) -> Result<(), Vec<Diagnostic>> {
    let p = cyclic.p();
    let mut diags = Vec::new();
    for atom in &decl.atoms {
        if atom.degree == 0 {
            diags.push(Diagnostic::ZeroDegree { atom: atom.name.clone() });
        }
    }
    let mut resolve = |name: &str| {
        let id = lookup(&decl.atoms, name);
        if id.is_none() {
            diags.push(Diagnostic::UnknownAtom { name: name.to_owned() });
        }
        id
    };
    let (t1, t2) = (resolve(&decl.theta1), resolve(&decl.theta2));
    let (Some(t1), Some(t2)) = (t1, t2) else {
        return Err(diags);
    };
    let (a1, a2) = (&decl.atoms[t1.0 as usize], &decl.atoms[t2.0 as usize]);

    let rels: BTreeSet<(u32, u32)> = decl.relations.iter().copied().collect();
    for &(j, k) in &rels {
        if j >= p || k >= p {
            diags.push(Diagnostic::ShiftOutOfRange { pair: (j, k), p });
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    if a1.degree != a2.degree && !rels.is_empty() {
        diags.push(Diagnostic::DegreeMismatch {
            theta1_degree: a1.degree,
            theta2_degree: a2.degree,
            relations: rels.len(),
        });
    }

    for &(j, k) in &rels {
        if !a2.noninvariant && j != 0 {
            diags.push(Diagnostic::InvariantShifted { pair: (j, k), atom: a2.name.clone() });
        }
        if !a1.noninvariant && k != 0 {
            diags.push(Diagnostic::InvariantShifted { pair: (j, k), atom: a1.name.clone() });
        }
    }

    let rows: Vec<(u32, u32)> = rels.iter().copied().collect();
    for (idx, &(j, k)) in rows.iter().enumerate() {
        for &(j2, k2) in &rows[idx + 1..] {
            if j == j2 && k != k2 {
                diags.push(Diagnostic::RowConflict { row: j, columns: (k2.max(k), k2.min(k)) });
            }
            if k == k2 && j != j2 {
                diags.push(Diagnostic::ColumnConflict { column: k, rows: (j2.max(j), j2.min(j)) });
            }
        }
    }

    if decl.chi_invariant {
        let normalize = |(j, k): (u32, u32)| (if a2.noninvariant { j } else { 0 }, if a1.noninvariant { k } else { 0 });
        for &(j, k) in &rels {
            let missing = normalize(((j + 1) % p, (k + 1) % p));
            if !rels.contains(&missing) {
                diags.push(Diagnostic::MissingDiagonalShift { from: (j, k), missing });
            }
        }
    }

    if t1 == t2 {
        for &(j, k) in &rels {
            if !rels.contains(&(k, j)) {
                diags.push(Diagnostic::AsymmetricSelfPair { pair: (j, k) });
            }
        }
    }

    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

impl GenericRelationModel {
    pub fn new(cyclic: CyclicData, decl: RelationDeclaration) -> Result<Self> {
        validate_relations(cyclic, &decl).map_err(Error::Relations)?;
        let theta1 = lookup(&decl.atoms, &decl.theta1).expect("validated");
        let theta2 = lookup(&decl.atoms, &decl.theta2).expect("validated");
        Ok(Self {
            cyclic,
            atoms: decl.atoms,
            theta1,
            theta2,
            chi_invariant: decl.chi_invariant,
            relations: decl.relations.into_iter().collect(),
        })
    }

    pub fn cyclic(&self) -> CyclicData {
        self.cyclic
    }

    pub fn atom(&self, id: AtomId) -> Option<&Atom> {
        self.atoms.get(id.0 as usize)
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        lookup(&self.atoms, name)
    }

    pub fn theta1(&self) -> AtomId {
        self.theta1
    }

    pub fn theta2(&self) -> AtomId {
        self.theta2
    }

    pub fn chi_invariant(&self) -> bool {
        self.chi_invariant
    }

    pub fn relations(&self) -> &BTreeSet<(u32, u32)> {
        &self.relations
    }

    pub fn is_noninvariant(&self, id: AtomId) -> bool {
        self.atom(id).is_some_and(|a| a.noninvariant)
    }

    fn effective_shift(&self, id: AtomId, shift: u32) -> u32 {
        if self.is_noninvariant(id) {
            shift % self.cyclic.p()
        } else {
            0
        }
    }

    /// Whether `σ^sa(a) ≅ (σ^sb(b) ⊗ σ^sc(χ))^∨` holds by declaration.
    ///
    /// The relation is symmetric in `a` and `b`, so both orientations of the
    /// designated pair are consulted. Pairs of atoms other than `(θ₁, θ₂)`
    /// are free and never match.
    pub fn is_declared_match(&self, a: (AtomId, u32), b: (AtomId, u32), chi_shift: u32) -> bool {
        let p = self.cyclic.p() as i64;
        let chi_shift = if self.chi_invariant { 0 } else { chi_shift as i64 };
        let relation_for = |one: (AtomId, u32), two: (AtomId, u32)| {
            if one.0 != self.theta1 || two.0 != self.theta2 {
                return false;
            }
            // σ^k θ₁ ≅ (σ^j θ₂ ⊗ σ^c χ)^∨  ⇔  relation (j - c, k - c).
            let k = self.effective_shift(one.0, one.1) as i64;
            let j = self.effective_shift(two.0, two.1) as i64;
            let pair = (
                self.effective_shift(two.0, (j - chi_shift).rem_euclid(p) as u32),
                self.effective_shift(one.0, (k - chi_shift).rem_euclid(p) as u32),
            );
            self.relations.contains(&pair)
        };
        relation_for(a, b) || relation_for(b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decl(relations: &[(u32, u32)], chi_invariant: bool) -> RelationDeclaration {
        RelationDeclaration {
            atoms: vec![
                Atom { name: "t1".into(), degree: 2, noninvariant: true },
                Atom { name: "t2".into(), degree: 2, noninvariant: true },
                Atom { name: "u".into(), degree: 3, noninvariant: true },
            ],
            theta1: "t1".into(),
            theta2: "t2".into(),
            chi_invariant,
            relations: relations.to_vec(),
        }
    }

    fn p(n: u32) -> CyclicData {
        CyclicData::new(n).unwrap()
    }

    #[test]
    fn closed_diagonal_orbit_accepted() {
        assert_eq!(validate_relations(p(2), &decl(&[(0, 0), (1, 1)], true)), Ok(()));
    }

    #[test]
    fn row_conflict_rejected() {
        let diags = validate_relations(p(2), &decl(&[(0, 0), (0, 1)], false)).unwrap_err();
        assert_eq!(diags, vec![Diagnostic::RowConflict { row: 0, columns: (1, 0) }]);
        assert!(diags[0].to_string().contains("sigma^1(theta1) ~ theta1"));
    }

    #[test]
    fn column_conflict_rejected() {
        let diags = validate_relations(p(3), &decl(&[(0, 2), (2, 2)], false)).unwrap_err();
        assert_eq!(diags, vec![Diagnostic::ColumnConflict { column: 2, rows: (2, 0) }]);
    }

    #[test]
    fn missing_diagonal_shift_rejected() {
        let diags = validate_relations(p(2), &decl(&[(0, 0)], true)).unwrap_err();
        assert_eq!(diags, vec![Diagnostic::MissingDiagonalShift { from: (0, 0), missing: (1, 1) }]);
    }

    #[test]
    fn degree_mismatch_requires_no_relations() {
        let mut d = decl(&[(0, 1)], false);
        d.theta2 = "u".into();
        let diags = validate_relations(p(3), &d).unwrap_err();
        assert!(matches!(diags[0], Diagnostic::DegreeMismatch { .. }));
        d.relations.clear();
        assert_eq!(validate_relations(p(3), &d), Ok(()));
    }

    #[test]
    fn out_of_range_and_unknown() {
        let diags = validate_relations(p(2), &decl(&[(0, 2)], false)).unwrap_err();
        assert_eq!(diags, vec![Diagnostic::ShiftOutOfRange { pair: (0, 2), p: 2 }]);
        let mut d = decl(&[], false);
        d.theta1 = "nope".into();
        assert!(matches!(validate_relations(p(2), &d).unwrap_err()[0], Diagnostic::UnknownAtom { .. }));
    }

    #[test]
    fn invariant_atoms_only_shift_zero() {
        let mut d = decl(&[(0, 0)], true);
        d.atoms[0].noninvariant = false;
        d.atoms[1].noninvariant = false;
        assert_eq!(validate_relations(p(3), &d), Ok(()));
        d.relations = vec![(1, 0)];
        assert!(matches!(validate_relations(p(3), &d).unwrap_err()[0], Diagnostic::InvariantShifted { .. }));
    }

    #[test]
    fn declared_match_follows_shifts() {
        let m = GenericRelationModel::new(p(3), decl(&[(0, 1), (1, 2), (2, 0)], true)).unwrap();
        let (t1, t2) = (m.theta1(), m.theta2());
        assert!(m.is_declared_match((t1, 1), (t2, 0), 0));
        assert!(m.is_declared_match((t2, 0), (t1, 1), 0));
        assert!(!m.is_declared_match((t1, 0), (t2, 0), 0));
        let u = m.atom_id("u").unwrap();
        assert!(!m.is_declared_match((u, 0), (t2, 0), 0));
    }

    #[test]
    fn chi_shift_moves_relation() {
        let m = GenericRelationModel::new(p(3), decl(&[(0, 1)], false)).unwrap();
        let (t1, t2) = (m.theta1(), m.theta2());
        assert!(m.is_declared_match((t1, 1), (t2, 0), 0));
        // σ applied to everything preserves the relation.
        assert!(m.is_declared_match((t1, 2), (t2, 1), 1));
        assert!(!m.is_declared_match((t1, 1), (t2, 0), 1));
    }
}
