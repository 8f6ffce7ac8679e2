//! Exact arithmetic in `ℤ[ζ_n]`, with elements kept as integer vectors
//! modulo `x^n − 1` (no canonical basis reduction).

use std::collections::HashMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact quotient of integer polynomials (lowest degree first) by a monic divisor.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (q, r) = div_rem_monic(num, den);
    assert!(r.iter().all(|&c| c == 0), "inexact division");
    q
}

fn div_rem_monic(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dd] = c;
            for (t, &d) in den.iter().enumerate() {
                rem[i - dd + t] -= c * d;
            }
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// The `n`-th cyclotomic polynomial via `x^n − 1 = ∏_{d | n} Φ_d`.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(phi) = cache.lock().expect("cache poisoned").get(&n) {
        return Arc::clone(phi);
    }
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        poly = div_exact_monic(&poly, &cyclotomic_polynomial(d));
    }
    let phi = Arc::new(poly);
    cache.lock().expect("cache poisoned").insert(n, Arc::clone(&phi));
    phi
}

impl CyclotomicInt {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "order must be positive");
        Self { coeffs: vec![0; n] }
    }

    pub fn from_integer(n: usize, m: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = m;
        z
    }

    /// `ζ_n^r`.
    pub fn root(n: usize, r: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[r.rem_euclid(n as i64) as usize] = 1;
        z
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "order must be positive");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0)
    }

    pub fn is_zero_vector(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add_root(&mut self, r: usize, c: i64) {
        let n = self.order();
        self.coeffs[r % n] += c;
    }

    /// Complex conjugation `ζ^r ↦ ζ^{−r}`.
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (r, c) in self.terms() {
            out.coeffs[(n - r) % n] += c;
        }
        out
    }

    /// Remainder modulo `Φ_n`, of degree below `φ(n)`.
    pub fn residual(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order());
        let (_, mut rem) = div_rem_monic(&self.coeffs, &phi);
        rem.resize(phi.len() - 1, 0);
        rem
    }

    /// The rational integer `m` with `Φ_n | (Σ c_r x^r − m)`, if any.
    pub fn as_integer(&self) -> Result<i64> {
        let rem = self.residual();
        if rem.iter().skip(1).any(|&c| c != 0) {
            return Err(Error::NotAnInteger { order: self.order(), residual: rem });
        }
        Ok(rem.first().copied().unwrap_or(0))
    }

    /// Equality of the represented algebraic numbers.
    pub fn value_eq(&self, other: &Self) -> bool {
        assert_eq!(self.order(), other.order(), "orders differ");
        if self.coeffs == other.coeffs {
            return true;
        }
        (self - other).residual().iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "cyclotomic orders differ");
    }

    /// Approximate complex value.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.order() as f64;
        self.terms()
            .map(|(r, c)| num_complex::Complex64::from_polar(c as f64, std::f64::consts::TAU * r as f64 / n))
            .sum()
    }
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.value_eq(other)
    }
}

impl Eq for CyclotomicInt {}

impl AddAssign<&CyclotomicInt> for CyclotomicInt {
    fn add_assign(&mut self, rhs: &CyclotomicInt) {
        self.check(rhs);
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a += b);
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check(rhs);
        CyclotomicInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self.check(rhs);
        let n = self.order();
        let mut out = CyclotomicInt::zero(n);
        let right: Vec<(usize, i64)> = rhs.terms().collect();
        for (r, a) in self.terms() {
            for &(s, b) in &right {
                out.coeffs[(r + s) % n] += a * b;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert_eq!(cyclotomic_polynomial(105).iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn integers_are_recognized() {
        let w = &CyclotomicInt::root(3, 1) + &CyclotomicInt::root(3, 2);
        assert_eq!(w.as_integer(), Ok(-1));
        assert_eq!(CyclotomicInt::root(4, 2).as_integer(), Ok(-1));
        assert_eq!(CyclotomicInt::from_integer(7, 5).as_integer(), Ok(5));
        let sum: CyclotomicInt = (0..12).fold(CyclotomicInt::zero(12), |acc, r| &acc + &CyclotomicInt::root(12, r));
        assert_eq!(sum.as_integer(), Ok(0));
    }

    #[test]
    fn non_integers_carry_residual() {
        let err = CyclotomicInt::root(5, 1).as_integer().unwrap_err();
        assert_eq!(err, Error::NotAnInteger { order: 5, residual: vec![0, 1, 0, 0] });
        assert!(CyclotomicInt::root(4, 1).as_integer().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let n = 12;
        let a = &CyclotomicInt::root(n, 5) + &CyclotomicInt::from_integer(n, 2);
        let b = &CyclotomicInt::root(n, 9) - &CyclotomicInt::root(n, 1);
        let ab = &a * &b;
        assert!((ab.to_complex() - a.to_complex() * b.to_complex()).norm() < 1e-12);
        // z · conj(z) is a non-negative real; for a root of unity it is 1.
        let z = CyclotomicInt::root(n, 7);
        assert_eq!((&z * &z.conj()).as_integer(), Ok(1));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn value_equality_ignores_representation() {
        let zero_rep = (0..3).fold(CyclotomicInt::zero(3), |acc, r| &acc + &CyclotomicInt::root(3, r));
        assert_eq!(zero_rep, CyclotomicInt::zero(3));
        assert_ne!(CyclotomicInt::root(3, 1), CyclotomicInt::root(3, 2));
    }
}
