//! Characters of the base `A`, class functions of `G = A ⋊ C_p`, induction
//! and the trivial-representation multiplicity.

use super::cyclotomic::CyclotomicInt;
use super::group::{FiniteGroupModel, GroupElem};
use crate::abelian::Elem;
use crate::error::{Error, Result};

/// `λ_x(a) = ∏_i ζ_{d_i}^{x_i a_i}` for an exponent vector `x ∈ A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterOfA {
    exponents: Elem,
}

impl CharacterOfA {
    pub fn new(exponents: Elem) -> Self {
        Self { exponents }
    }

    pub fn trivial() -> Self {
        Self { exponents: Elem(0) }
    }

    pub fn exponents(&self) -> Elem {
        self.exponents
    }

    /// Every character of `A`.
    pub fn all(group: &FiniteGroupModel) -> impl Iterator<Item = CharacterOfA> + '_ {
        group.base().elements().map(CharacterOfA::new)
    }

    /// `λ(a)` as an exponent of `ζ_n`, `n` the group's value order.
    pub fn exponent_at(&self, group: &FiniteGroupModel, a: Elem) -> usize {
        let base = group.base();
        let n = group.value_order() as u64;
        let x = base.coords(self.exponents);
        let y = base.coords(a);
        (x.iter().zip(&y).zip(base.factors()).map(|((&u, &v), &d)| u as u64 * v as u64 * (n / d as u64)).sum::<u64>()
            % n) as usize
    }

    pub fn value(&self, group: &FiniteGroupModel, a: Elem) -> CyclotomicInt {
        CyclotomicInt::root(group.value_order(), self.exponent_at(group, a) as i64)
    }
}

/// A function on `G` constant on conjugacy classes, stored per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<CyclotomicInt>,
}

impl ClassFunction {
    pub fn from_fn(group: &FiniteGroupModel, f: impl Fn(GroupElem) -> CyclotomicInt) -> Self {
        Self { values: group.elements().map(f).collect() }
    }

    pub fn trivial(group: &FiniteGroupModel) -> Self {
        let n = group.value_order();
        Self::from_fn(group, |_| CyclotomicInt::from_integer(n, 1))
    }

    /// The linear character `(a, t) ↦ ζ_p^{s t}` pulled back from `C_p`.
    pub fn inflated(group: &FiniteGroupModel, s: u32) -> Self {
        let n = group.value_order();
        let step = n / group.p() as usize;
        Self::from_fn(group, |g| CyclotomicInt::root(n, (s as usize * g.t as usize * step) as i64))
    }

    pub fn values(&self) -> &[CyclotomicInt] {
        &self.values
    }

    pub fn at(&self, group: &FiniteGroupModel, g: GroupElem) -> &CyclotomicInt {
        &self.values[group.index(g)]
    }

    pub fn degree(&self, group: &FiniteGroupModel) -> Result<i64> {
        self.at(group, group.identity()).as_integer()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    /// Whether the values agree on conjugate elements (exact comparison).
    pub fn is_class_function(&self, group: &FiniteGroupModel) -> bool {
        group
            .elements()
            .all(|x| group.elements().all(|y| self.at(group, group.conjugate_by(x, y)) == self.at(group, x)))
    }

    /// Values on `A = {(a, 0)}`.
    pub fn restrict(&self, group: &FiniteGroupModel) -> Vec<CyclotomicInt> {
        group.base().elements().map(|a| self.at(group, GroupElem { a, t: 0 }).clone()).collect()
    }
}

/// `Ind_A^G λ`: zero off `A`, `Σ_{j<p} λ(σ^j a)` at `(a, 0)`.
pub fn induced_character(lambda: CharacterOfA, group: &FiniteGroupModel) -> ClassFunction {
    let n = group.value_order();
    ClassFunction::from_fn(group, |g| {
        let mut v = CyclotomicInt::zero(n);
        if g.t == 0 {
            for j in 0..group.p() {
                v.add_root(lambda.exponent_at(group, group.sigma_power(g.a, j)), 1);
            }
        }
        v
    })
}

/// Induction of an arbitrary function on `A` through coset representatives
/// `x_t = (0, t)`: `Ind f(g) = Σ_t f°(x_t^{-1} g x_t)`, with `f°` zero
/// outside `A`. This goes through the group law only.
pub fn induce_from_base(values_on_base: &[CyclotomicInt], group: &FiniteGroupModel) -> ClassFunction {
    let n = group.value_order();
    let reps: Vec<GroupElem> = (0..group.p()).map(|t| GroupElem { a: Elem(0), t }).collect();
    ClassFunction::from_fn(group, |g| {
        let mut v = CyclotomicInt::zero(n);
        for &x in &reps {
            let c = group.conjugate_by(g, x);
            if c.t == 0 {
                v += &values_on_base[c.a.index()];
            }
        }
        v
    })
}

/// Sparse view of a class function used by the summation kernels.
#[derive(Debug, Clone)]
pub struct SparseClassFunction {
    order: usize,
    terms: Vec<Vec<(usize, i64)>>,
}

impl From<&ClassFunction> for SparseClassFunction {
    fn from(f: &ClassFunction) -> Self {
        Self {
            order: f.values.first().map_or(1, CyclotomicInt::order),
            terms: f.values.iter().map(|v| v.terms().collect()).collect(),
        }
    }
}

/// `Σ_g f₁(g) f₂(g) f₃(g)` summed over every element of `G`, exactly.
pub fn triple_sum(f1: &SparseClassFunction, f2: &SparseClassFunction, f3: &SparseClassFunction) -> CyclotomicInt {
    let n = f1.order;
    let mut acc = vec![0i64; n];
    for ((a, b), c) in f1.terms.iter().zip(&f2.terms).zip(&f3.terms) {
        if a.is_empty() || b.is_empty() || c.is_empty() {
            continue;
        }
        for &(r, x) in a {
            for &(s, y) in b {
                let rs = (r + s) % n;
                let xy = x * y;
                for &(t, z) in c {
                    acc[(rs + t) % n] += xy * z;
                }
            }
        }
    }
    CyclotomicInt::from_coeffs(acc)
}

fn divide_by_order(total: &CyclotomicInt, group: &FiniteGroupModel) -> Result<i64> {
    let m = total.as_integer()?;
    let order = group.order() as i64;
    if m % order != 0 {
        return Err(Error::NotAnInteger { order: total.order(), residual: vec![m, order] });
    }
    Ok(m / order)
}

/// `⟨Ind λ₁ · Ind λ₂ · Ind χ, 1⟩_G` from precomputed sparse inductions.
pub fn trivial_multiplicity_sparse(
    ind1: &SparseClassFunction,
    ind2: &SparseClassFunction,
    ind_chi: &SparseClassFunction,
    group: &FiniteGroupModel,
) -> Result<u32> {
    let m = divide_by_order(&triple_sum(ind1, ind2, ind_chi), group)?;
    u32::try_from(m).map_err(|_| Error::Precondition(format!("negative multiplicity {m}")))
}

/// Multiplicity of the trivial representation in `Ind λ₁ ⊗ Ind λ₂ ⊗ Ind χ`.
pub fn trivial_multiplicity(
    lambda1: CharacterOfA,
    lambda2: CharacterOfA,
    chi: CharacterOfA,
    group: &FiniteGroupModel,
) -> Result<u32> {
    let sparse = |l| SparseClassFunction::from(&induced_character(l, group));
    trivial_multiplicity_sparse(&sparse(lambda1), &sparse(lambda2), &sparse(chi), group)
}

/// Floating-point variant of [`trivial_multiplicity`]: complex summation,
/// rounded when within `1e-6` of an integer.
pub fn trivial_multiplicity_approx(
    lambda1: CharacterOfA,
    lambda2: CharacterOfA,
    chi: CharacterOfA,
    group: &FiniteGroupModel,
) -> Option<u32> {
    let ind = |l| induced_character(l, group);
    let (a, b, c) = (ind(lambda1), ind(lambda2), ind(chi));
    let total: num_complex::Complex64 = a
        .values
        .iter()
        .zip(&b.values)
        .zip(&c.values)
        .map(|((x, y), z)| x.to_complex() * y.to_complex() * z.to_complex())
        .sum();
    let m = total / group.order() as f64;
    let rounded = m.re.round();
    (m.im.abs() < 1e-6 && (m.re - rounded).abs() < 1e-6 && rounded >= 0.0).then_some(rounded as u32)
}

/// `⟨f, h⟩ = |G|^{-1} Σ_g f(g) \overline{h(g)}`.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction, group: &FiniteGroupModel) -> Result<i64> {
    let n = group.value_order();
    let mut total = CyclotomicInt::zero(n);
    for (x, y) in f.values.iter().zip(&h.values) {
        total += &(x * &y.conj());
    }
    divide_by_order(&total, group)
}

/// The projection formula `Ind(Res V · W) = V · Ind W`, with the left side
/// induced through the group law and the right side from the closed form.
pub fn projection_formula_check(v: &ClassFunction, w: CharacterOfA, group: &FiniteGroupModel) -> bool {
    let restricted = v.restrict(group);
    let twisted: Vec<CyclotomicInt> =
        group.base().elements().zip(&restricted).map(|(a, va)| va * &w.value(group, a)).collect();
    let lhs = induce_from_base(&twisted, group);
    let rhs = v.mul(&induced_character(w, group));
    lhs == rhs
}

/// Table-driven form of [`projection_formula_check`] for sweeps: conjugation
/// by the coset representatives is tabulated once per group, values stay
/// sparse, and any entry whose coefficient vectors differ is decided by
/// reduction mod `Φ_n`.
pub struct ProjectionChecker<'g> {
    group: &'g FiniteGroupModel,
    /// `conj[t][g]` is the index of `x_t^{-1} g x_t`, `x_t = (0, t)`.
    conj: Vec<Vec<usize>>,
    base_len: usize,
}

impl<'g> ProjectionChecker<'g> {
    pub fn new(group: &'g FiniteGroupModel) -> Self {
        let conj = (0..group.p())
            .map(|t| {
                let x = GroupElem { a: Elem(0), t };
                group.elements().map(|g| group.index(group.conjugate_by(g, x))).collect()
            })
            .collect();
        Self { group, conj, base_len: group.base().order() as usize }
    }

    /// Whether `Ind(Res V · W) = V · Ind W`.
    pub fn check(&self, v: &SparseClassFunction, w: CharacterOfA, ind_w: &SparseClassFunction) -> bool {
        let g = self.group;
        let n = g.value_order();
        let w_exp: Vec<usize> = g.base().elements().map(|a| w.exponent_at(g, a)).collect();
        let mut acc = vec![0i64; n];
        for idx in 0..g.order() {
            for c in self.conj.iter().map(|row| row[idx]) {
                // Elements of A come first in the index order.
                if c < self.base_len {
                    for &(r, x) in &v.terms[c] {
                        acc[(r + w_exp[c]) % n] += x;
                    }
                }
            }
            for &(r, x) in &v.terms[idx] {
                for &(s, y) in &ind_w.terms[idx] {
                    acc[(r + s) % n] -= x * y;
                }
            }
            if acc.iter().any(|&c| c != 0) {
                let diff = CyclotomicInt::from_coeffs(std::mem::replace(&mut acc, vec![0i64; n]));
                if diff.residual().iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
        true
    }
}
