use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The degree `p` of a cyclic extension K/F together with its abstract
/// Galois generator. Shifts `j` stand for `σ^j` and are always reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CyclicData {
    p: u32,
}

impl CyclicData {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduce an arbitrary (possibly negative) exponent of σ into `0..p`.
    pub fn reduce(&self, j: i64) -> u32 {
        j.rem_euclid(self.p as i64) as u32
    }

    pub fn shifts(&self) -> std::ops::Range<u32> {
        0..self.p
    }
}

impl TryFrom<u32> for CyclicData {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl From<CyclicData> for u32 {
    fn from(c: CyclicData) -> u32 {
        c.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(7919));
        assert!(!is_prime(7917));
    }

    #[test]
    fn rejects_composite_degree() {
        assert_eq!(CyclicData::new(4), Err(Error::NotPrime(4)));
        assert_eq!(CyclicData::new(1), Err(Error::NotPrime(1)));
        assert!(CyclicData::new(5).is_ok());
    }

    #[test]
    fn shifts_reduce_mod_p() {
        let c = CyclicData::new(3).unwrap();
        assert_eq!(c.reduce(3), 0);
        assert_eq!(c.reduce(-1), 2);
        assert_eq!(c.reduce(7), 1);
    }
}
