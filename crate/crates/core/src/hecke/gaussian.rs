use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const I: Self = Self::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn associates(self) -> [Self; 4] {
        [self, self * Self::I, -self, -(self * Self::I)]
    }

    /// The unique associate with `re ≥ 1, im ≥ 0` (zero maps to zero).
    pub fn normalized(self) -> Self {
        if self.is_zero() {
            return self;
        }
        self.associates()
            .into_iter()
            .find(|z| z.re >= 1 && z.im >= 0)
            .expect("exactly one associate lies in the first quadrant")
    }

    /// Division with the quotient rounded to the nearest Gaussian integer.
    pub fn div_rem(self, other: Self) -> (Self, Self) {
        let n = other.norm();
        let num = self * other.conj();
        let round = |x: i64| (2 * x + n).div_euclid(2 * n);
        let q = Self::new(round(num.re), round(num.im));
        (q, self - q * other)
    }

    pub fn divides(self, other: Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let n = self.norm();
        let t = other * self.conj();
        t.re % n == 0 && t.im % n == 0
    }

    pub fn gcd(mut a: Self, mut b: Self) -> Self {
        while !b.is_zero() {
            let (_, r) = a.div_rem(b);
            a = b;
            b = r;
        }
        a.normalized()
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}i"),
            (a, b) if b < 0 => write!(f, "{a}-{}i", -b),
            (a, b) => write!(f, "{a}+{b}i"),
        }
    }
}
