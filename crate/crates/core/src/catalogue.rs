//! The shipped catalogue of abelian models: every invariant-factor shape up
//! to a given order, with every automorphism of prime order `p` up to
//! conjugacy in `Aut(A)`.
//!
//! Shapes whose endomorphism ring is too large to enumerate get a few
//! hand-picked automorphisms instead (coordinate cycles and a transvection).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{gcd, AbelianGroup, AbelianModel, Elem};
use crate::cyclic::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogueSpec {
    pub max_order: u32,
    pub primes: Vec<u32>,
    /// Shapes with more endomorphisms than this are not enumerated.
    #[serde(default = "default_max_endomorphisms")]
    pub max_endomorphisms: u64,
    #[serde(default = "default_true")]
    pub hand_picked: bool,
}

fn default_max_endomorphisms() -> u64 {
    1 << 21
}

fn default_true() -> bool {
    true
}

impl Default for CatalogueSpec {
    fn default() -> Self {
        Self { max_order: 64, primes: vec![2, 3, 5], max_endomorphisms: default_max_endomorphisms(), hand_picked: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntrySource {
    /// Representative of a conjugacy class; `class_size` automorphisms share it.
    Enumerated {
        class_size: usize,
    },
    HandPicked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub factors: Vec<u32>,
    pub sigma: Vec<Vec<i64>>,
    pub p: u32,
    pub source: EntrySource,
}

impl CatalogueEntry {
    pub fn model(&self) -> AbelianModel {
        AbelianModel::new(self.factors.clone(), self.sigma.clone(), self.p).expect("catalogue entries are valid")
    }

    pub fn order(&self) -> u32 {
        self.factors.iter().product()
    }
}

/// Invariant-factor lists `d₁ | d₂ | … | d_r`, all `d_i ≥ 2`, with product
/// at most `max_order`, sorted by order then lexicographically.
pub fn invariant_factor_shapes(max_order: u32) -> Vec<Vec<u32>> {
    fn extend(cur: &mut Vec<u32>, order: u32, max_order: u32, out: &mut Vec<Vec<u32>>) {
        let last = cur.last().copied().unwrap_or(1);
        let mut d = if cur.is_empty() { 2 } else { last };
        while order * d <= max_order {
            if d % last == 0 {
                cur.push(d);
                out.push(cur.clone());
                extend(cur, order * d, max_order, out);
                cur.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|s| (s.iter().product::<u32>(), s.clone()));
    out
}

/// `|End(A)| = ∏_{i,j} gcd(d_i, d_j)`.
pub fn endomorphism_count(factors: &[u32]) -> u64 {
    factors.iter().flat_map(|&a| factors.iter().map(move |&b| gcd(a, b) as u64)).product()
}

/// Permutation tables of `A` with a precomputed addition table.
struct TableGroup {
    group: AbelianGroup,
    add: Vec<u8>,
    order: usize,
}

impl TableGroup {
    fn new(group: AbelianGroup) -> Self {
        let order = group.order() as usize;
        assert!(order <= 256, "table groups hold at most 256 elements");
        let mut add = vec![0u8; order * order];
        for a in group.elements() {
            for b in group.elements() {
                add[a.index() * order + b.index()] = group.add(a, b).0 as u8;
            }
        }
        Self { group, add, order }
    }

    fn sum(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    /// Table of the endomorphism sending generator `e_j` to `images[j]`.
    fn table(&self, images: &[u8], out: &mut [u8]) {
        out[0] = 0;
        let factors = self.group.factors();
        for x in 1..self.order {
            let (mut rest, mut stride) = (x, 1);
            let mut j = 0;
            while rest % factors[j] as usize == 0 {
                rest /= factors[j] as usize;
                stride *= factors[j] as usize;
                j += 1;
            }
            out[x] = self.sum(out[x - stride], images[j]);
        }
    }

    fn matrix(&self, table: &[u8]) -> Vec<Vec<i64>> {
        let r = self.group.rank();
        let mut stride = 1u32;
        let mut cols = Vec::with_capacity(r);
        for &d in self.group.factors() {
            cols.push(self.group.coords(Elem(table[stride as usize] as u32)));
            stride *= d;
        }
        (0..r).map(|i| (0..r).map(|j| cols[j][i] as i64).collect()).collect()
    }
}

fn is_permutation(table: &[u8]) -> bool {
    let mut seen = vec![false; table.len()];
    table.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

fn compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    g.iter().map(|&v| f[v as usize]).collect()
}

fn inverse(f: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; f.len()];
    for (i, &v) in f.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

fn has_order(table: &[u8], p: u32) -> bool {
    let identity = |t: &[u8]| t.iter().enumerate().all(|(i, &v)| v as usize == i);
    if identity(table) {
        return false;
    }
    let mut power = table.to_vec();
    for _ in 1..p {
        power = compose(table, &power);
    }
    identity(&power)
}

/// Every automorphism of the group, as permutation tables.
fn automorphisms(tg: &TableGroup) -> Vec<Vec<u8>> {
    let factors = tg.group.factors();
    let candidates: Vec<Vec<u8>> = factors
        .iter()
        .map(|&d| tg.group.elements().filter(|&e| d % tg.group.element_order(e) == 0).map(|e| e.0 as u8).collect())
        .collect();
    let r = factors.len();
    let mut digits = vec![0usize; r];
    let mut images = vec![0u8; r];
    let mut table = vec![0u8; tg.order];
    let mut out = Vec::new();
    loop {
        for j in 0..r {
            images[j] = candidates[j][digits[j]];
        }
        tg.table(&images, &mut table);
        if is_permutation(&table) {
            out.push(table.clone());
        }
        let mut j = 0;
        loop {
            if j == r {
                return out;
            }
            digits[j] += 1;
            if digits[j] < candidates[j].len() {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

/// Conjugacy-class representatives of the order-`p` automorphisms.
fn class_representatives(auts: &[Vec<u8>], auts_inv: &[Vec<u8>], p: u32) -> Vec<(Vec<u8>, usize)> {
    let mut remaining: Vec<&Vec<u8>> = auts.iter().filter(|t| has_order(t, p)).collect();
    remaining.sort();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut reps = Vec::new();
    for sigma in remaining {
        if seen.contains(sigma) {
            continue;
        }
        let before = seen.len();
        for (tau, tau_inv) in auts.iter().zip(auts_inv) {
            seen.insert(compose(tau, &compose(sigma, tau_inv)));
        }
        reps.push((sigma.clone(), seen.len() - before));
    }
    reps
}

fn enumerated_entries(factors: &[u32], primes: &[u32]) -> Vec<CatalogueEntry> {
    let tg = TableGroup::new(AbelianGroup::new(factors.to_vec()).expect("valid shape"));
    let auts = automorphisms(&tg);
    let auts_inv: Vec<Vec<u8>> = auts.iter().map(|t| inverse(t)).collect();
    let mut out = Vec::new();
    for &p in primes {
        for (table, class_size) in class_representatives(&auts, &auts_inv, p) {
            out.push(CatalogueEntry {
                factors: factors.to_vec(),
                sigma: tg.matrix(&table),
                p,
                source: EntrySource::Enumerated { class_size },
            });
        }
    }
    out
}

/// Coordinate permutations (given as cycles) and the transvection
/// `x₀ ↦ x₀ + x₁` on shapes whose first coordinates share a factor.
fn hand_picked_entries(factors: &[u32], primes: &[u32]) -> Vec<CatalogueEntry> {
    let r = factors.len();
    let equal = factors.iter().take_while(|&&d| d == factors[0]).count();
    let mut out = Vec::new();
    let mut push = |sigma: Vec<Vec<i64>>, p: u32| {
        if primes.contains(&p) && AbelianModel::new(factors.to_vec(), sigma.clone(), p).is_ok() {
            out.push(CatalogueEntry { factors: factors.to_vec(), sigma, p, source: EntrySource::HandPicked });
        }
    };
    let identity = || -> Vec<Vec<i64>> { (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect() };
    let permutation = |cycles: &[&[usize]]| {
        let mut m = vec![vec![0i64; r]; r];
        let mut image: Vec<usize> = (0..r).collect();
        for cycle in cycles {
            for (k, &c) in cycle.iter().enumerate() {
                image[c] = cycle[(k + 1) % cycle.len()];
            }
        }
        for (j, &i) in image.iter().enumerate() {
            m[i][j] = 1;
        }
        m
    };
    for p in [2u32, 3, 5] {
        let len = p as usize;
        let count = equal / len;
        for blocks in 1..=count {
            let cycles: Vec<Vec<usize>> = (0..blocks).map(|b| (b * len..(b + 1) * len).collect()).collect();
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            push(permutation(&refs), p);
        }
    }
    if equal >= 2 && factors[0] == 2 {
        let mut t = identity();
        t[0][1] = 1;
        push(t, 2);
    }
    out
}

/// The catalogue for `spec`, in shape order then prime order.
pub fn catalogue(spec: &CatalogueSpec) -> Result<Vec<CatalogueEntry>> {
    if let Some(&p) = spec.primes.iter().find(|&&p| !is_prime(p as u64)) {
        return Err(Error::NotPrime(p as u64));
    }
    if spec.max_order > 256 {
        return Err(Error::InvalidModel(format!("catalogue order bound {} exceeds 256", spec.max_order)));
    }
    let mut out = Vec::new();
    for shape in invariant_factor_shapes(spec.max_order) {
        if endomorphism_count(&shape) <= spec.max_endomorphisms {
            out.extend(enumerated_entries(&shape, &spec.primes));
        } else if spec.hand_picked {
            out.extend(hand_picked_entries(&shape, &spec.primes));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_up_to_sixteen() {
        let shapes = invariant_factor_shapes(16);
        let of_order =
            |n: u32| -> Vec<Vec<u32>> { shapes.iter().filter(|s| s.iter().product::<u32>() == n).cloned().collect() };
        assert_eq!(of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(of_order(16), vec![vec![2, 2, 2, 2], vec![2, 2, 4], vec![2, 8], vec![4, 4], vec![16]]);
        assert_eq!(of_order(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(of_order(7), vec![vec![7]]);
    }

    #[test]
    fn shape_count_to_sixty_four() {
        assert_eq!(invariant_factor_shapes(64).len(), 116);
    }

    #[test]
    fn automorphism_group_orders() {
        let count = |f: Vec<u32>| automorphisms(&TableGroup::new(AbelianGroup::new(f).unwrap())).len();
        assert_eq!(count(vec![7]), 6);
        assert_eq!(count(vec![2, 2]), 6);
        assert_eq!(count(vec![3, 3]), 48);
        assert_eq!(count(vec![2, 4]), 8);
        assert_eq!(count(vec![2, 2, 2]), 168);
    }

    #[test]
    fn cyclic_classes_are_single_units() {
        let entries = enumerated_entries(&[7], &[2, 3]);
        let mut sigmas: Vec<(u32, i64)> = entries.iter().map(|e| (e.p, e.sigma[0][0])).collect();
        sigmas.sort();
        assert_eq!(sigmas, vec![(2, 6), (3, 2), (3, 4)]);
    }

    #[test]
    fn involution_classes_of_klein_and_f2_cubed() {
        // GL(2,2) ≅ S₃: one class of 3 involutions, one class of 2 elements of order 3.
        let e = enumerated_entries(&[2, 2], &[2, 3]);
        let sizes: Vec<(u32, EntrySource)> = e.iter().map(|x| (x.p, x.source)).collect();
        assert_eq!(
            sizes,
            vec![(2, EntrySource::Enumerated { class_size: 3 }), (3, EntrySource::Enumerated { class_size: 2 })]
        );
        // GL(3,2): involutions form one class of 21, order-3 elements one class of 56.
        let e = enumerated_entries(&[2, 2, 2], &[2, 3]);
        let sizes: Vec<(u32, EntrySource)> = e.iter().map(|x| (x.p, x.source)).collect();
        assert_eq!(
            sizes,
            vec![(2, EntrySource::Enumerated { class_size: 21 }), (3, EntrySource::Enumerated { class_size: 56 })]
        );
    }

    #[test]
    fn catalogue_entries_build_models() {
        let spec = CatalogueSpec { max_order: 16, ..CatalogueSpec::default() };
        let entries = catalogue(&spec).unwrap();
        assert!(!entries.is_empty());
        for e in &entries {
            let m = e.model();
            assert_eq!(m.p(), e.p);
            assert!(!m.is_trivial_action());
        }
        assert!(entries.iter().any(|e| e.factors == vec![3, 3] && e.p == 2));
        assert!(entries.iter().any(|e| e.factors == vec![11] && e.p == 5));
    }

    #[test]
    fn hand_picked_for_large_elementary_groups() {
        let e = hand_picked_entries(&[2, 2, 2, 2, 2], &[2, 3, 5]);
        let primes: Vec<u32> = e.iter().map(|x| x.p).collect();
        assert_eq!(primes, vec![2, 2, 3, 5, 2]);
        let e = hand_picked_entries(&[2, 2, 2, 2, 4], &[2, 3, 5]);
        assert_eq!(e.iter().map(|x| x.p).collect::<Vec<_>>(), vec![2, 2, 3, 2]);
    }

    #[test]
    fn rejects_composite_primes() {
        let spec = CatalogueSpec { primes: vec![4], ..CatalogueSpec::default() };
        assert_eq!(catalogue(&spec), Err(Error::NotPrime(4)));
    }
}
