//! Finite abelian groups `ℤ/d₁ × … × ℤ/d_r` with integer-matrix endomorphisms.
//!
//! Elements are stored as a mixed-radix index (coordinate 0 least
//! significant), so models are `Copy`-cheap to query and every group of the
//! desk-scale catalogue fits comfortably in lookup tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicData;
use crate::error::{Error, Result};

/// Largest group order accepted by [`AbelianGroup::new`].
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: u32,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidModel("at least one cyclic factor required".into()));
        }
        if let Some(&d) = factors.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidModel(format!("cyclic factor {d} must be positive")));
        }
        let order: u64 = factors.iter().map(|&d| d as u64).product();
        if order > MAX_ORDER {
            return Err(Error::InvalidModel(format!("group order {order} exceeds the supported maximum {MAX_ORDER}")));
        }
        Ok(Self { factors, order: order as u32 })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Least common multiple of the cyclic factors.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn coords(&self, e: Elem) -> Vec<u32> {
        let mut rest = e.0;
        self.factors
            .iter()
            .map(|&d| {
                let c = rest % d;
                rest /= d;
                c
            })
            .collect()
    }

    /// Canonical element from arbitrary integer coordinates (each reduced
    /// mod its factor).
    pub fn from_coords(&self, coords: &[i64]) -> Result<Elem> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidModel(format!("expected {} coordinates, got {}", self.rank(), coords.len())));
        }
        Ok(self.pack(coords.iter().copied()))
    }

    fn pack(&self, coords: impl Iterator<Item = i64>) -> Elem {
        let mut idx = 0u64;
        let mut radix = 1u64;
        for (c, &d) in coords.zip(&self.factors) {
            idx += c.rem_euclid(d as i64) as u64 * radix;
            radix *= d as u64;
        }
        Elem(idx as u32)
    }

    fn zip_digits(&self, a: Elem, b: Elem, f: impl Fn(u32, u32, u32) -> u32) -> Elem {
        let (mut x, mut y) = (a.0, b.0);
        let mut idx = 0u32;
        let mut radix = 1u32;
        for &d in &self.factors {
            idx += f(x % d, y % d, d) * radix;
            x /= d;
            y /= d;
            radix *= d;
        }
        Elem(idx)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.zip_digits(a, b, |u, v, d| (u + v) % d)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.zip_digits(a, a, |u, _, d| (d - u) % d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.zip_digits(a, b, |u, v, d| (u + d - v) % d)
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: Elem) -> u32 {
        self.coords(a).iter().zip(&self.factors).fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(c, d)))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A group endomorphism given by an integer matrix acting on coordinate
/// columns: `(M a)_i = Σ_j M_ij a_j mod d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    matrix: Vec<Vec<i64>>,
    table: Vec<u32>,
}

impl Endomorphism {
    /// Validates that the matrix is well defined on the group, i.e.
    /// `d_j · M_ij ≡ 0 (mod d_i)` for every entry.
    pub fn new(group: &AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidModel(format!("sigma matrix must be {r}x{r}")));
        }
        let d = group.factors();
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            for (j, m) in row.iter_mut().enumerate() {
                *m = m.rem_euclid(d[i] as i64);
                if (d[j] as i64 * *m) % d[i] as i64 != 0 {
                    return Err(Error::InvalidModel(format!(
                        "entry ({i},{j}) = {m} does not define a homomorphism Z/{} -> Z/{}",
                        d[j], d[i]
                    )));
                }
            }
        }
        Ok(Self::from_reduced(group, reduced))
    }

    fn from_reduced(group: &AbelianGroup, matrix: Vec<Vec<i64>>) -> Self {
        let table = group
            .elements()
            .map(|e| {
                let a = group.coords(e);
                let image = matrix.iter().map(|row| row.iter().zip(&a).map(|(&m, &c)| m * c as i64).sum::<i64>());
                group.pack(image).0
            })
            .collect();
        Self { matrix, table }
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let r = group.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_reduced(group, matrix)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, e: Elem) -> Elem {
        Elem(self.table[e.index()])
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// Order of the endomorphism as a map, if it is at most `bound`.
    pub fn order_up_to(&self, bound: u32) -> Option<u32> {
        let mut current: Vec<u32> = self.table.clone();
        for k in 1..=bound {
            if current.iter().enumerate().all(|(i, &v)| v as usize == i) {
                return Some(k);
            }
            current = current.iter().map(|&v| self.table[v as usize]).collect();
        }
        None
    }

    /// The matrix of the adjoint map under the coordinate pairing
    /// `⟨x, y⟩ = Σ_i x_i y_i · (n/d_i) mod n`, `n` the exponent.
    ///
    /// If `λ_x` denotes the character `y ↦ ζ_n^{⟨x,y⟩}`, the adjoint `τ`
    /// satisfies `λ_{Mx} = λ_x ∘ τ`.
    pub fn adjoint(&self, group: &AbelianGroup) -> Self {
        let d = group.factors();
        let r = group.rank();
        let matrix = (0..r)
            .map(|j| (0..r).map(|i| (self.matrix[i][j] * d[j] as i64 / d[i] as i64).rem_euclid(d[j] as i64)).collect())
            .collect();
        Self::from_reduced(group, matrix)
    }
}

/// The abelian label model: a finite abelian group `A` standing for a group
/// of finite-order Hecke characters, with σ acting through `sigma`.
/// Duals are negatives, twists are sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianModel {
    group: AbelianGroup,
    sigma: Endomorphism,
    cyclic: CyclicData,
    /// `shifts[j]` is the table of `σ^j`.
    shifts: Vec<Vec<u32>>,
}

impl AbelianModel {
    /// σ must have order exactly `p`.
    pub fn new(factors: Vec<u32>, sigma_matrix: Vec<Vec<i64>>, p: u32) -> Result<Self> {
        Self::build(factors, sigma_matrix, p, false)
    }

    /// Like [`AbelianModel::new`] but also accepts σ = identity.
    pub fn new_allowing_trivial(factors: Vec<u32>, sigma_matrix: Vec<Vec<i64>>, p: u32) -> Result<Self> {
        Self::build(factors, sigma_matrix, p, true)
    }

    /// Cyclic group `ℤ/n` with σ = multiplication by `u`.
    pub fn cyclic(n: u32, u: i64, p: u32) -> Result<Self> {
        Self::new(vec![n], vec![vec![u]], p)
    }

    fn build(factors: Vec<u32>, sigma_matrix: Vec<Vec<i64>>, p: u32, allow_trivial: bool) -> Result<Self> {
        let cyclic = CyclicData::new(p)?;
        let group = AbelianGroup::new(factors)?;
        let sigma = Endomorphism::new(&group, sigma_matrix)?;
        Self::from_parts(group, sigma, cyclic, allow_trivial)
    }

    pub fn from_parts(
        group: AbelianGroup,
        sigma: Endomorphism,
        cyclic: CyclicData,
        allow_trivial: bool,
    ) -> Result<Self> {
        let p = cyclic.p();
        let mut shifts = vec![Endomorphism::identity(&group).table];
        for j in 1..=p as usize {
            let next: Vec<u32> = shifts[j - 1].iter().map(|&v| sigma.table[v as usize]).collect();
            shifts.push(next);
        }
        let sigma_p = shifts.pop().expect("p >= 2");
        if sigma_p.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(Error::InvalidModel(format!("sigma^{p} is not the identity on {group}")));
        }
        if sigma.is_identity() && !allow_trivial {
            return Err(Error::InvalidModel(format!("sigma is the identity; its order must be exactly {p}")));
        }
        Ok(Self { group, sigma, cyclic, shifts })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn sigma(&self) -> &Endomorphism {
        &self.sigma
    }

    pub fn cyclic_data(&self) -> CyclicData {
        self.cyclic
    }

    pub fn p(&self) -> u32 {
        self.cyclic.p()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.sigma.is_identity()
    }

    pub fn elem(&self, coords: &[i64]) -> Result<Elem> {
        self.group.from_coords(coords)
    }

    /// `σ^j(e)`, with `j` reduced mod `p`.
    pub fn shift(&self, e: Elem, j: i64) -> Elem {
        Elem(self.shifts[self.cyclic.reduce(j) as usize][e.index()])
    }

    pub fn dual(&self, e: Elem) -> Elem {
        self.group.neg(e)
    }

    pub fn twist(&self, e: Elem, chi: Elem) -> Elem {
        self.group.add(e, chi)
    }

    pub fn is_invariant(&self, e: Elem) -> bool {
        self.sigma.apply(e) == e
    }

    pub fn orbit(&self, e: Elem) -> Vec<Elem> {
        self.cyclic.shifts().map(|j| self.shift(e, j as i64)).collect()
    }

    pub fn describe(&self) -> String {
        format!("{} with sigma = {:?}, p = {}", self.group, self.sigma.matrix, self.p())
    }
}
