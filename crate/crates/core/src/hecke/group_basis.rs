//! Generators, discrete logarithms and the full character group of a small
//! finite abelian group given only by its multiplication.

/// A generating sequence `g₁, …, g_k` such that every element has a unique
/// expression `g₁^{t₁}⋯g_k^{t_k}` with `0 ≤ t_i < m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupBasis {
    generators: Vec<usize>,
    local_orders: Vec<u32>,
    /// `relations[i]` = exponents of `g_i^{m_i}` in the earlier generators.
    relations: Vec<Vec<u32>>,
    /// Flattened, `k` entries per element.
    logs: Vec<u32>,
    exponent: u32,
}

impl GroupBasis {
    /// `mul` must be an abelian group law on `0..size` with identity
    /// `identity`.
    pub fn new(size: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let order_of = |x: usize| {
            let (mut y, mut n) = (x, 1u32);
            while y != identity {
                y = mul(y, x);
                n += 1;
            }
            n
        };
        let orders: Vec<u32> = (0..size).map(order_of).collect();
        let exponent = orders.iter().fold(1, |acc, &o| crate::abelian::lcm(acc, o));

        let mut log_of: Vec<Option<Vec<u32>>> = vec![None; size];
        log_of[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let mut generators = Vec::new();
        let mut local_orders = Vec::new();
        let mut relations = Vec::new();

        while members.len() < size {
            let x = (0..size)
                .filter(|&e| log_of[e].is_none())
                .max_by_key(|&e| (orders[e], std::cmp::Reverse(e)))
                .expect("span is a proper subgroup");
            let mut power = x;
            let mut m = 1u32;
            while log_of[power].is_none() {
                power = mul(power, x);
                m += 1;
            }
            relations.push(log_of[power].clone().expect("in span"));

            let old = members.clone();
            for v in log_of.iter_mut().flatten() {
                v.push(0);
            }
            let mut xt = identity;
            for t in 1..m {
                xt = mul(xt, x);
                for &s in &old {
                    let e = mul(s, xt);
                    let mut v = log_of[s].clone().expect("in span");
                    *v.last_mut().expect("pushed") = t;
                    debug_assert!(log_of[e].is_none());
                    log_of[e] = Some(v);
                    members.push(e);
                }
            }
            generators.push(x);
            local_orders.push(m);
        }

        let k = generators.len();
        let logs = log_of
            .into_iter()
            .flat_map(|v| {
                let mut v = v.expect("every element reached");
                v.resize(k, 0);
                v
            })
            .collect();
        for r in &mut relations {
            r.resize(k, 0);
        }
        Self { generators, local_orders, relations, logs, exponent }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn local_orders(&self) -> &[u32] {
        &self.local_orders
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.local_orders.iter().map(|&m| m as usize).product()
    }

    pub fn log(&self, e: usize) -> &[u32] {
        let k = self.rank();
        &self.logs[e * k..(e + 1) * k]
    }

    /// Exponent of `ζ_E` taken by the character with generator values
    /// `ζ_E^{c_i}` at element `e`.
    pub fn evaluate(&self, character: &[u32], e: usize) -> u32 {
        let n = self.exponent as u64;
        (self.log(e).iter().zip(character).map(|(&t, &c)| t as u64 * c as u64).sum::<u64>() % n) as u32
    }

    /// All characters, as generator-value exponent vectors, in lexicographic
    /// order of the free choices made generator by generator.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        let n = self.exponent;
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for (i, &m) in self.local_orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for c in &out {
                let rhs = self.relations[i].iter().zip(c).map(|(&r, &cj)| r as u64 * cj as u64).sum::<u64>() % n as u64;
                assert_eq!(rhs % m as u64, 0, "character of the span must extend");
                let base = (rhs / m as u64) as u32;
                for t in 0..m {
                    let mut v = c.clone();
                    v.push((base + t * (n / m)) % n);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Whether an exponent vector satisfies every relation, i.e. defines a
    /// character.
    pub fn is_character(&self, c: &[u32]) -> bool {
        let n = self.exponent as u64;
        c.len() == self.rank()
            && self.local_orders.iter().enumerate().all(|(i, &m)| {
                let lhs = m as u64 * c[i] as u64 % n;
                let rhs = self.relations[i].iter().zip(c).map(|(&r, &cj)| r as u64 * cj as u64).sum::<u64>() % n;
                lhs == rhs
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units_mod(m: usize) -> (Vec<usize>, GroupBasis) {
        let units: Vec<usize> = (1..m).filter(|&a| crate::abelian::gcd(a as u32, m as u32) == 1).collect();
        let pos = |v: usize| units.iter().position(|&u| u == v).unwrap();
        let basis = GroupBasis::new(units.len(), pos(1), |a, b| pos(units[a] * units[b] % m));
        (units, basis)
    }

    #[test]
    fn cyclic_group_gets_one_generator() {
        let (_, b) = units_mod(7);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.local_orders(), &[6]);
        assert_eq!(b.characters().len(), 6);
    }

    #[test]
    fn noncyclic_units_mod_15() {
        let (units, b) = units_mod(15);
        assert_eq!(b.order(), 8);
        assert_eq!(b.exponent(), 4);
        let chars = b.characters();
        assert_eq!(chars.len(), 8);
        // Characters are multiplicative and pairwise distinct.
        let pos = |v: usize| units.iter().position(|&u| u == v).unwrap();
        for c in &chars {
            assert!(b.is_character(c));
            for x in 0..units.len() {
                for y in 0..units.len() {
                    let xy = pos(units[x] * units[y] % 15);
                    assert_eq!(b.evaluate(c, xy), (b.evaluate(c, x) + b.evaluate(c, y)) % 4);
                }
            }
        }
        let mut sorted = chars.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
    }

    #[test]
    fn logs_are_unique() {
        let (_, b) = units_mod(21);
        let mut seen: Vec<Vec<u32>> = (0..b.order()).map(|e| b.log(e).to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), b.order());
    }
}
