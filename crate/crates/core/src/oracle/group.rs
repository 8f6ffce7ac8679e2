//! The semidirect product `G = A ⋊ C_p`.

use crate::abelian::{lcm, AbelianGroup, Elem, Endomorphism};
use crate::cyclic::CyclicData;
use crate::error::{Error, Result};

/// `(a, t)` with `t ∈ ℤ/p`; product `(a, t)(a', t') = (a + σ^t a', t + t')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub a: Elem,
    pub t: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupModel {
    base: AbelianGroup,
    sigma: Endomorphism,
    cyclic: CyclicData,
    /// `powers[t]` is the table of `σ^t`.
    powers: Vec<Vec<u32>>,
    value_order: usize,
}

impl FiniteGroupModel {
    /// Requires `σ^p = id`; `σ = id` gives the direct product.
    pub fn build_semidirect(base: AbelianGroup, sigma: Endomorphism, p: u32) -> Result<Self> {
        let cyclic = CyclicData::new(p)?;
        let mut powers: Vec<Vec<u32>> = vec![Endomorphism::identity(&base).table().to_vec()];
        for t in 1..=p as usize {
            let next = powers[t - 1].iter().map(|&v| sigma.table()[v as usize]).collect();
            powers.push(next);
        }
        let last = powers.pop().expect("p >= 2");
        if last.iter().enumerate().any(|(i, &v)| v as usize != i) {
            return Err(Error::InvalidModel(format!("sigma^{p} is not the identity on {base}")));
        }
        if !sigma.is_bijective() {
            return Err(Error::InvalidModel("sigma is not an automorphism".into()));
        }
        let value_order = lcm(base.exponent(), p) as usize;
        Ok(Self { base, sigma, cyclic, powers, value_order })
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    pub fn sigma(&self) -> &Endomorphism {
        &self.sigma
    }

    pub fn p(&self) -> u32 {
        self.cyclic.p()
    }

    pub fn order(&self) -> usize {
        self.base.order() as usize * self.p() as usize
    }

    /// Order `n` of the roots of unity in which character values are written:
    /// `lcm(exp A, p)`.
    pub fn value_order(&self) -> usize {
        self.value_order
    }

    pub fn index(&self, g: GroupElem) -> usize {
        g.t as usize * self.base.order() as usize + g.a.index()
    }

    pub fn element(&self, index: usize) -> GroupElem {
        let n = self.base.order() as usize;
        GroupElem { a: Elem((index % n) as u32), t: (index / n) as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { a: self.base.zero(), t: 0 }
    }

    pub fn sigma_power(&self, a: Elem, t: u32) -> Elem {
        Elem(self.powers[(t % self.p()) as usize][a.index()])
    }

    pub fn mul(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        GroupElem { a: self.base.add(x.a, self.sigma_power(y.a, x.t)), t: (x.t + y.t) % self.p() }
    }

    /// `(a, t)^{-1} = (−σ^{−t} a, −t)`.
    pub fn inv(&self, x: GroupElem) -> GroupElem {
        let p = self.p();
        let back = (p - x.t % p) % p;
        GroupElem { a: self.base.neg(self.sigma_power(x.a, back)), t: back }
    }

    /// `y^{-1} x y`.
    pub fn conjugate_by(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

#[cfg(test)]
mod tests {
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn build(factors: Vec<u32>, m: Vec<Vec<i64>>, p: u32) -> Result<FiniteGroupModel> {
        let g = AbelianGroup::new(factors)?;
        let s = Endomorphism::new(&g, m)?;
        FiniteGroupModel::build_semidirect(g, s, p)
    }

    #[test]
    fn symmetric_group_on_three_letters() {
        let g = build(vec![3], vec![vec![-1]], 2).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // Elements of order 2 are exactly the three with t = 1.
        let involutions = g.elements().filter(|&x| x != g.identity() && g.mul(x, x) == g.identity()).count();
        assert_eq!(involutions, 3);
    }

    #[test]
    fn frobenius_group_of_order_21() {
        let g = build(vec![7], vec![vec![2]], 3).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        assert_eq!(g.value_order(), 21);
    }

    #[test]
    fn direct_product_accepted() {
        let g = build(vec![4], vec![vec![1]], 2).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
    }

    #[test]
    fn order_must_divide_p() {
        assert!(matches!(build(vec![7], vec![vec![3]], 3), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn group_axioms_on_random_triples() {
        let g = build(vec![2, 4], vec![vec![1, 0], vec![2, 3]], 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = g.order();
        for _ in 0..500 {
            let [x, y, z] = [0; 3].map(|_| g.element(rng.random_range(0..n)));
            assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.mul(g.inv(x), x), g.identity());
        }
    }
}
