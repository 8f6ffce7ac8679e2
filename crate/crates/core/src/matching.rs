//! Matching matrices, Rankin–Selberg factors and the pole-order dispatcher.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianModel, Elem};
use crate::datum::{base_change, BaseChange, CuspidalDatumF};
use crate::error::{Error, Result};
use crate::label::{CuspidalLabel, RepModel};

/// The `p × p` table of pairs `(j, k)` with `σ^j(θ₂)^∨ ⊗ χ^{-1} ≅ σ^k(θ₁)`.
/// Row index `j` shifts θ₂, column index `k` shifts θ₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchingMatrix {
    p: u32,
    cells: Vec<bool>,
    ell: u32,
}

impl MatchingMatrix {
    pub fn from_fn(p: u32, mut cell: impl FnMut(u32, u32) -> Result<bool>) -> Result<Self> {
        let mut cells = Vec::with_capacity((p * p) as usize);
        for j in 0..p {
            for k in 0..p {
                cells.push(cell(j, k)?);
            }
        }
        let ell = cells.iter().filter(|&&c| c).count() as u32;
        Ok(Self { p, cells, ell })
    }

    pub fn empty(p: u32) -> Self {
        Self { p, cells: vec![false; (p * p) as usize], ell: 0 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn get(&self, j: u32, k: u32) -> bool {
        self.cells[(j * self.p + k) as usize]
    }

    pub fn true_cells(&self) -> Vec<(u32, u32)> {
        (0..self.p).flat_map(|j| (0..self.p).map(move |k| (j, k))).filter(|&(j, k)| self.get(j, k)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.cells.chunks(self.p as usize).map(<[bool]>::to_vec).collect()
    }

    /// At most one true cell in every row and every column.
    pub fn is_partial_permutation(&self) -> bool {
        let p = self.p;
        let rows_ok = (0..p).all(|j| (0..p).filter(|&k| self.get(j, k)).count() <= 1);
        let cols_ok = (0..p).all(|k| (0..p).filter(|&j| self.get(j, k)).count() <= 1);
        rows_ok && cols_ok
    }

    fn assert_structure(self) -> Self {
        assert!(
            self.is_partial_permutation() && self.ell <= self.p,
            "matching matrix is not a partial permutation although both constituents \
             are non-invariant: {self}"
        );
        self
    }
}

impl fmt::Display for MatchingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "   k")?;
        for k in 0..self.p {
            write!(f, " {k:>2}")?;
        }
        writeln!(f)?;
        for j in 0..self.p {
            write!(f, "j{j:>2} ")?;
            for k in 0..self.p {
                write!(f, " {:>2}", if self.get(j, k) { "✓" } else { "·" })?;
            }
            writeln!(f)?;
        }
        write!(f, "ell = {}", self.ell)
    }
}

/// Matching matrix of an abelian triple without precondition checks.
///
/// Cell `(j,k)` holds iff `σ^j θ₂ + σ^k θ₁ + χ = 0`.
pub fn abelian_matching_unchecked(model: &AbelianModel, theta1: Elem, theta2: Elem, chi: Elem) -> MatchingMatrix {
    let g = model.group();
    let p = model.p();
    let orbit1 = model.orbit(theta1);
    let mut cells = Vec::with_capacity((p * p) as usize);
    let mut ell = 0;
    for j in 0..p {
        let target = g.neg(g.add(model.shift(theta2, j as i64), chi));
        for &s in &orbit1 {
            let hit = s == target;
            ell += hit as u32;
            cells.push(hit);
        }
    }
    MatchingMatrix { p, cells, ell }
}

/// Checked abelian matching matrix; θ₁ and θ₂ must not be σ-invariant.
pub fn abelian_matching(model: &AbelianModel, theta1: Elem, theta2: Elem, chi: Elem) -> Result<MatchingMatrix> {
    for (name, t) in [("theta1", theta1), ("theta2", theta2)] {
        if model.is_invariant(t) {
            return Err(Error::Precondition(format!("{name} = {:?} is sigma-invariant", model.group().coords(t))));
        }
    }
    Ok(abelian_matching_unchecked(model, theta1, theta2, chi).assert_structure())
}

/// Build the matching matrix of `(θ₁, θ₂, χ)`.
///
/// Panics if the result is not a partial permutation: with non-invariant
/// constituents that cannot happen.
pub fn matching_matrix(
    model: &RepModel,
    theta1: &CuspidalLabel,
    theta2: &CuspidalLabel,
    chi: &CuspidalLabel,
) -> Result<MatchingMatrix> {
    if chi.degree() != 1 {
        return Err(Error::InvalidTwist(chi.degree()));
    }
    if let (RepModel::Abelian(m), Some(a), Some(b), Some(c)) =
        (model, theta1.as_abelian(), theta2.as_abelian(), chi.as_abelian())
    {
        return abelian_matching(m, a, b, c);
    }
    for (name, t) in [("theta1", theta1), ("theta2", theta2)] {
        if model.is_invariant(t)? {
            return Err(Error::Precondition(format!("{name} = {t:?} is sigma-invariant")));
        }
    }
    let p = model.p();
    if theta1.degree() != theta2.degree() {
        // Still type-check the labels.
        model.is_matching_pair(theta1, theta2, chi)?;
        return Ok(MatchingMatrix::empty(p));
    }
    let shifted1 = shifts(model, theta1)?;
    let shifted2 = shifts(model, theta2)?;
    MatchingMatrix::from_fn(p, |j, k| model.is_matching_pair(&shifted1[k as usize], &shifted2[j as usize], chi))
        .map(MatchingMatrix::assert_structure)
}

fn shifts(model: &RepModel, label: &CuspidalLabel) -> Result<Vec<CuspidalLabel>> {
    model.cyclic().shifts().map(|j| model.galois_shift(label, j as i64)).collect()
}

/// Order of the pole at `s = 1` of `L(s, a × b)`: 1 iff `a ≅ b^∨`.
/// `b` already carries any twist.
pub fn rs_pole_order(model: &RepModel, a: &CuspidalLabel, b: &CuspidalLabel) -> Result<u32> {
    if a.degree() != b.degree() {
        return Ok(0);
    }
    let dual = model.dual(b)?;
    Ok(model.is_isomorphic(a, &dual)? as u32)
}

/// A factor `L(s, left × (right ⊗ twist))` of the triple product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsFactor {
    /// Shift applied to the first constituent.
    pub j: u32,
    /// Shift applied to the second constituent.
    pub k: u32,
    pub left: CuspidalLabel,
    pub right: CuspidalLabel,
    pub twist: CuspidalLabel,
    pub pole_order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DispatchCase {
    /// At least one base change stays cuspidal: Rankin–Selberg, order ≤ 1.
    CuspidalBaseChange,
    /// Both induced from K with equal degrees: count matching pairs.
    BothInduced,
    /// Both induced with different degrees: no pole.
    DegreeMismatch,
}

pub fn dispatch_case(pi1: &CuspidalDatumF, pi2: &CuspidalDatumF) -> DispatchCase {
    match (pi1.behavior(), pi2.behavior()) {
        (BaseChange::InducedFrom(_), BaseChange::InducedFrom(_)) if pi1.degree() != pi2.degree() => {
            DispatchCase::DegreeMismatch
        }
        (BaseChange::InducedFrom(_), BaseChange::InducedFrom(_)) => DispatchCase::BothInduced,
        _ => DispatchCase::CuspidalBaseChange,
    }
}

/// Order of the pole at `s = 1` of `L(s, π₁ × π₂ × AI(χ))`.
pub fn triple_pole_order(
    model: &RepModel,
    pi1: &CuspidalDatumF,
    pi2: &CuspidalDatumF,
    chi: &CuspidalLabel,
) -> Result<u32> {
    if chi.degree() != 1 {
        return Err(Error::InvalidTwist(chi.degree()));
    }
    match (dispatch_case(pi1, pi2), pi1.behavior(), pi2.behavior()) {
        (DispatchCase::DegreeMismatch, _, _) => Ok(0),
        (_, BaseChange::InducedFrom(t1), BaseChange::InducedFrom(t2)) => Ok(matching_matrix(model, t1, t2, chi)?.ell()),
        (_, BaseChange::StaysCuspidal(l1), BaseChange::StaysCuspidal(l2)) => {
            Ok(model.is_matching_pair(l1, l2, chi)? as u32)
        }
        // One side cuspidal: compare it with each constituent of the other.
        (_, BaseChange::StaysCuspidal(l), BaseChange::InducedFrom(t)) => {
            cuspidal_against_orbit(model, l, t, chi, false)
        }
        (_, BaseChange::InducedFrom(t), BaseChange::StaysCuspidal(l)) => cuspidal_against_orbit(model, l, t, chi, true),
    }
}

/// Number of `σ^j θ` matching the σ-invariant `λ`. Non-invariance of θ
/// allows at most one; panics otherwise.
fn cuspidal_against_orbit(
    model: &RepModel,
    lambda: &CuspidalLabel,
    theta: &CuspidalLabel,
    chi: &CuspidalLabel,
    theta_first: bool,
) -> Result<u32> {
    let mut hits = 0;
    for s in shifts(model, theta)? {
        let hit = if theta_first {
            model.is_matching_pair(&s, lambda, chi)?
        } else {
            model.is_matching_pair(lambda, &s, chi)?
        };
        hits += hit as u32;
    }
    assert!(hits <= 1, "invariant {lambda:?} matches {hits} constituents of the orbit of {theta:?}");
    Ok(hits)
}

/// The factorization `∏_{j,k} L(s, σ^j(θ₁) × (σ^k(θ₂) ⊗ χ))`, one factor per
/// pair of constituents of `π_{1K}` and `π_{2K}`. Its pole orders sum to
/// [`triple_pole_order`].
pub fn factorize(
    model: &RepModel,
    pi1: &CuspidalDatumF,
    pi2: &CuspidalDatumF,
    chi: &CuspidalLabel,
) -> Result<Vec<RsFactor>> {
    if chi.degree() != 1 {
        return Err(Error::InvalidTwist(chi.degree()));
    }
    let left = base_change(model, pi1)?;
    let right = base_change(model, pi2)?;
    let mut factors = Vec::with_capacity(left.len() * right.len());
    for (j, a) in left.constituents().iter().enumerate() {
        for (k, b) in right.constituents().iter().enumerate() {
            let pole_order = model.is_matching_pair(a, b, chi)? as u32;
            factors.push(RsFactor {
                j: j as u32,
                k: k as u32,
                left: a.clone(),
                right: b.clone(),
                twist: chi.clone(),
                pole_order,
            });
        }
    }
    let total: u32 = factors.iter().map(|f| f.pole_order).sum();
    let ell = triple_pole_order(model, pi1, pi2, chi)?;
    assert_eq!(total, ell, "factor pole orders must add up to the triple pole order");
    Ok(factors)
}
