//! Character sums over ideals of `ℤ[i]` of bounded norm.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::GaussianHeckeChar;
use super::gaussian::GaussianInt;
use super::modulus::GaussianModulus;
use crate::error::{Error, Result};
use crate::par::{fold_range, Execution};

/// Ratios at or below this are read as cancellation; between it and the
/// pole threshold the probe is inconclusive.
pub const CANCELLATION_CEILING: f64 = 0.01;
pub const DEFAULT_X: u64 = 1_000_000;
pub const DEFAULT_TAU: f64 = 0.05;
pub const MIN_CLASSIFY_X: u64 = 100;

/// Normalized generators `a + bi` (`a ≥ 1, b ≥ 0`) of the nonzero ideals
/// of norm at most `bound`, one per ideal.
#[derive(Debug, Clone)]
pub struct IdealStream {
    bound: u64,
    a: i64,
    b: i64,
}

impl IdealStream {
    pub fn new(bound: u64) -> Self {
        Self { bound, a: 1, b: 0 }
    }
}

impl Iterator for IdealStream {
    type Item = (GaussianInt, u64);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let norm = (self.a * self.a + self.b * self.b) as u64;
            if (self.a * self.a) as u64 > self.bound {
                return None;
            }
            if norm <= self.bound {
                let z = GaussianInt::new(self.a, self.b);
                self.b += 1;
                return Some((z, norm));
            }
            self.a += 1;
            self.b = 0;
        }
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Number of ideals of norm `≤ bound` in each residue class mod `m`.
///
/// Rows `a = 1..=√X` are distributed across workers; counts are integers,
/// so the result does not depend on the partition.
pub fn residue_histogram(modulus: &GaussianModulus, bound: u64, exec: Execution) -> Vec<u64> {
    let rows = isqrt(bound) as usize;
    let n = modulus.norm() as usize;
    fold_range(
        exec,
        rows,
        || vec![0u64; n],
        |mut hist, row| {
            let a = row as i64 + 1;
            let bmax = isqrt(bound - (a * a) as u64) as i64;
            for b in 0..=bmax {
                hist[modulus.residue(GaussianInt::new(a, b)) as usize] += 1;
            }
            hist
        },
        |mut x, y| {
            x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
            x
        },
    )
}

/// `A(X) = Σ_{N𝔞 ≤ X, (𝔞, m) = 1} ψ(𝔞)` from a precomputed histogram.
pub fn character_sum_from_histogram(psi: &GaussianHeckeChar, hist: &[u64]) -> Complex64 {
    let e = psi.modulus().basis().exponent() as usize;
    let mut by_exponent = vec![0u64; e];
    for (r, &count) in hist.iter().enumerate() {
        if let Some(k) = psi.residue_exponent(r as u32) {
            by_exponent[k as usize] += count;
        }
    }
    by_exponent
        .iter()
        .enumerate()
        .map(|(k, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * k as f64 / e as f64))
        .sum()
}

pub fn character_sum(psi: &GaussianHeckeChar, bound: u64, exec: Execution) -> Complex64 {
    let hist = residue_histogram(psi.modulus(), bound, exec);
    character_sum_from_histogram(psi, &hist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleClass {
    Pole,
    NoPole,
    Indeterminate,
}

impl PoleClass {
    pub fn order(self) -> Option<u32> {
        match self {
            PoleClass::Pole => Some(1),
            PoleClass::NoPole => Some(0),
            PoleClass::Indeterminate => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleProbe {
    pub ratio: f64,
    pub class: PoleClass,
}

/// Read the growth ratio `|A(X)|/X` against the threshold `tau`.
pub fn classify_ratio(ratio: f64, tau: f64) -> PoleClass {
    if ratio > tau {
        PoleClass::Pole
    } else if ratio <= CANCELLATION_CEILING {
        PoleClass::NoPole
    } else {
        PoleClass::Indeterminate
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if bound < MIN_CLASSIFY_X {
        return Err(Error::Precondition(format!("pole classification needs X >= {MIN_CLASSIFY_X}, got {bound}")));
    }
    Ok(())
}

pub fn classify_pole_from_histogram(psi: &GaussianHeckeChar, hist: &[u64], bound: u64, tau: f64) -> Result<PoleProbe> {
    check_bound(bound)?;
    let ratio = character_sum_from_histogram(psi, hist).norm() / bound as f64;
    Ok(PoleProbe { ratio, class: classify_ratio(ratio, tau) })
}

pub fn classify_pole(psi: &GaussianHeckeChar, bound: u64, tau: f64, exec: Execution) -> Result<PoleProbe> {
    check_bound(bound)?;
    let hist = residue_histogram(psi.modulus(), bound, exec);
    classify_pole_from_histogram(psi, &hist, bound, tau)
}
