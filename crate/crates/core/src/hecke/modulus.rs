//! Residue rings `ℤ[i]/(g)` for odd moduli and their unit groups modulo the
//! image of the global units `{±1, ±i}`.

use std::f64::consts::FRAC_PI_4;

use super::gaussian::GaussianInt;
use super::group_basis::GroupBasis;
use crate::error::{Error, Result};

/// Largest residue-ring size for which lookup tables are built.
pub const MAX_MODULUS_NORM: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianModulus {
    generator: GaussianInt,
    norm: i64,
    // The ideal as a lattice in ℤ² has basis (alpha, 0), (beta, gamma).
    alpha: i64,
    beta: i64,
    gamma: i64,
    /// Index into the quotient group for unit residues.
    quotient_index: Vec<Option<u32>>,
    /// One residue per quotient element.
    quotient_reps: Vec<u32>,
    unit_count: usize,
    unit_image_order: usize,
    basis: GroupBasis,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl GaussianModulus {
    /// The ideal `(g)`; `g` is normalized to its first-quadrant associate.
    /// Moduli divisible by the ramified prime `(1+i)` are rejected.
    pub fn new(g: GaussianInt) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::UnsupportedModulus("the zero ideal".into()));
        }
        let generator = g.normalized();
        let norm = generator.norm();
        if norm % 2 == 0 {
            return Err(Error::UnsupportedModulus(format!("({generator}) is even (divisible by 1+i)")));
        }
        if norm > MAX_MODULUS_NORM {
            return Err(Error::UnsupportedModulus(format!("norm {norm} exceeds {MAX_MODULUS_NORM}")));
        }
        let (u, v) = (generator.re, generator.im);
        let (gamma, s, t) = ext_gcd(v, u);
        let alpha = norm / gamma;
        let beta = (s * u - t * v).rem_euclid(alpha);

        let mut m = Self {
            generator,
            norm,
            alpha,
            beta,
            gamma,
            quotient_index: Vec::new(),
            quotient_reps: Vec::new(),
            unit_count: 0,
            unit_image_order: 0,
            basis: GroupBasis::new(1, 0, |_, _| 0),
        };
        m.build_tables();
        Ok(m)
    }

    pub fn from_parts(re: i64, im: i64) -> Result<Self> {
        Self::new(GaussianInt::new(re, im))
    }

    fn build_tables(&mut self) {
        let n = self.norm as usize;
        let is_unit: Vec<bool> =
            (0..n).map(|r| GaussianInt::gcd(self.representative(r as u32), self.generator).is_unit()).collect();
        let unit_image: Vec<u32> = [GaussianInt::ONE, GaussianInt::I, -GaussianInt::ONE, -GaussianInt::I]
            .iter()
            .map(|&u| self.residue(u))
            .collect();
        let mut image = unit_image.clone();
        image.sort_unstable();
        image.dedup();
        self.unit_image_order = image.len();

        let mut quotient_index = vec![None; n];
        let mut reps = Vec::new();
        for r in 0..n {
            if !is_unit[r] || quotient_index[r].is_some() {
                continue;
            }
            let z = self.representative(r as u32);
            let q = reps.len() as u32;
            for &u in &image {
                let w = self.residue(z * self.representative(u));
                quotient_index[w as usize] = Some(q);
            }
            reps.push(r as u32);
        }
        self.unit_count = is_unit.iter().filter(|&&u| u).count();
        self.quotient_index = quotient_index;
        self.quotient_reps = reps;

        let one_q = self.quotient_index[self.residue(GaussianInt::ONE) as usize].expect("1 is a unit") as usize;
        let basis = GroupBasis::new(self.quotient_reps.len(), one_q, |a, b| {
            let za = self.representative(self.quotient_reps[a]);
            let zb = self.representative(self.quotient_reps[b]);
            self.quotient_index[self.residue(za * zb) as usize].expect("units are closed") as usize
        });
        self.basis = basis;
    }

    pub fn generator(&self) -> GaussianInt {
        self.generator
    }

    pub fn norm(&self) -> i64 {
        self.norm
    }

    /// Whether the ideal is fixed by complex conjugation.
    pub fn is_self_conjugate(&self) -> bool {
        self.generator.conj().normalized() == self.generator
    }

    pub fn conjugate(&self) -> Result<Self> {
        Self::new(self.generator.conj())
    }

    /// Canonical residue index in `0..norm`.
    pub fn residue(&self, z: GaussianInt) -> u32 {
        let q = z.im.div_euclid(self.gamma);
        let y = z.im - q * self.gamma;
        let x = (z.re - q * self.beta).rem_euclid(self.alpha);
        (y * self.alpha + x) as u32
    }

    /// A Gaussian integer in the residue class `r`.
    pub fn representative(&self, r: u32) -> GaussianInt {
        let r = r as i64;
        GaussianInt::new(r % self.alpha, r / self.alpha)
    }

    /// Quotient-group element of a residue, `None` for non-units.
    pub fn quotient_of(&self, r: u32) -> Option<u32> {
        self.quotient_index[r as usize]
    }

    pub fn quotient_order(&self) -> usize {
        self.quotient_reps.len()
    }

    pub fn quotient_rep(&self, q: u32) -> GaussianInt {
        self.representative(self.quotient_reps[q as usize])
    }

    /// `|(ℤ[i]/m)^×|`.
    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// Order of the image of `{±1, ±i}` in the residue unit group.
    pub fn unit_image_order(&self) -> usize {
        self.unit_image_order
    }

    pub fn basis(&self) -> &GroupBasis {
        &self.basis
    }

    /// Limit of `A(X)/X` for the trivial character of this modulus:
    /// the ideal density `π/4` times the proportion of coprime residues.
    pub fn trivial_density(&self) -> f64 {
        FRAC_PI_4 * self.unit_count as f64 / self.norm as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_reduction_is_canonical() {
        for (re, im) in [(7, 0), (2, 1), (3, 2), (5, 0), (4, 1), (1, 0), (9, 6)] {
            let Ok(m) = GaussianModulus::from_parts(re, im) else { continue };
            let g = m.generator();
            for r in 0..m.norm() as u32 {
                assert_eq!(m.residue(m.representative(r)), r);
            }
            for a in -10..10 {
                for b in -10..10 {
                    let z = GaussianInt::new(a, b);
                    let r = m.residue(z);
                    assert!((r as i64) < m.norm());
                    assert!(g.divides(z - m.representative(r)));
                    assert_eq!(m.residue(z + g * GaussianInt::new(3, -2)), r);
                }
            }
        }
    }

    #[test]
    fn inert_seven() {
        let m = GaussianModulus::from_parts(7, 0).unwrap();
        assert_eq!(m.unit_count(), 48);
        assert_eq!(m.unit_image_order(), 4);
        assert_eq!(m.quotient_order(), 12);
        assert_eq!(m.basis().rank(), 1);
        assert!(m.is_self_conjugate());
    }

    #[test]
    fn split_prime_has_full_unit_image() {
        let m = GaussianModulus::from_parts(2, 1).unwrap();
        assert_eq!(m.unit_count(), 4);
        assert_eq!(m.quotient_order(), 1);
        assert!(!m.is_self_conjugate());
        assert_eq!(m.conjugate().unwrap().generator(), GaussianInt::new(2, -1).normalized());
    }

    #[test]
    fn unit_modulus() {
        let m = GaussianModulus::from_parts(1, 0).unwrap();
        assert_eq!(m.norm(), 1);
        assert_eq!(m.quotient_order(), 1);
        assert!((m.trivial_density() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn even_moduli_rejected() {
        assert!(GaussianModulus::from_parts(1, 1).is_err());
        assert!(GaussianModulus::from_parts(2, 0).is_err());
        assert!(GaussianModulus::from_parts(3, 1).is_err());
    }

    #[test]
    fn density_matches_prime_ideal_product() {
        use std::f64::consts::FRAC_PI_4;
        // (7) is prime of norm 49; (5) = (2+i)(2-i); (15) = (3)(2+i)(2-i).
        let cases = [(7, 1.0 - 1.0 / 49.0), (5, (1.0 - 0.2) * (1.0 - 0.2)), (15, (1.0 - 1.0 / 9.0) * 0.64)];
        for (n, factor) in cases {
            let m = GaussianModulus::from_parts(n, 0).unwrap();
            assert!((m.trivial_density() - FRAC_PI_4 * factor).abs() < 1e-12, "modulus {n}");
        }
    }
}
