//! Finite-order Hecke characters of `ℚ(i)` of conductor dividing an odd
//! modulus `m`: characters of `(ℤ[i]/m)^×` trivial on `{±1, ±i}`.

use std::fmt;
use std::sync::Arc;

use super::gaussian::GaussianInt;
use super::group_basis::GroupBasis;
use super::modulus::GaussianModulus;
use crate::abelian::gcd;
use crate::error::{Error, Result};

/// A character, stored by its values `ζ_E^{c_i}` on the generators of the
/// modulus' quotient group (`E` its exponent).
#[derive(Clone)]
pub struct GaussianHeckeChar {
    modulus: Arc<GaussianModulus>,
    exps: Vec<u32>,
}

impl PartialEq for GaussianHeckeChar {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.generator() == other.modulus.generator() && self.exps == other.exps
    }
}

impl Eq for GaussianHeckeChar {}

impl std::hash::Hash for GaussianHeckeChar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.generator().hash(state);
        self.exps.hash(state);
    }
}

impl fmt::Debug for GaussianHeckeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi[mod ({})]{:?}", self.modulus.generator(), self.exps)
    }
}

/// The complete list of unit-trivial characters of the modulus.
pub fn unit_trivial_characters(modulus: &Arc<GaussianModulus>) -> Vec<GaussianHeckeChar> {
    modulus
        .basis()
        .characters()
        .into_iter()
        .map(|exps| GaussianHeckeChar { modulus: Arc::clone(modulus), exps })
        .collect()
}

impl GaussianHeckeChar {
    pub fn trivial(modulus: &Arc<GaussianModulus>) -> Self {
        Self { modulus: Arc::clone(modulus), exps: vec![0; modulus.basis().rank()] }
    }

    /// Character from generator exponents; rejects vectors violating the
    /// group relations.
    pub fn from_exponents(modulus: &Arc<GaussianModulus>, exps: Vec<u32>) -> Result<Self> {
        let basis = modulus.basis();
        let e = basis.exponent();
        let exps: Vec<u32> = exps.into_iter().map(|c| c % e).collect();
        if !basis.is_character(&exps) {
            return Err(Error::Precondition(format!(
                "{exps:?} is not a character of the unit group mod ({})",
                modulus.generator()
            )));
        }
        Ok(Self { modulus: Arc::clone(modulus), exps })
    }

    /// For a cyclic quotient group: the power `ψ₀^c` of the character with
    /// `ψ₀(g) = ζ_E` on the chosen generator.
    pub fn power_of_generator(modulus: &Arc<GaussianModulus>, c: i64) -> Result<Self> {
        let basis = modulus.basis();
        if basis.rank() != 1 {
            return Err(Error::Precondition(format!("character group mod ({}) is not cyclic", modulus.generator())));
        }
        let e = basis.exponent() as i64;
        Self::from_exponents(modulus, vec![c.rem_euclid(e) as u32])
    }

    pub fn modulus(&self) -> &Arc<GaussianModulus> {
        &self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    fn basis(&self) -> &GroupBasis {
        self.modulus.basis()
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    pub fn order(&self) -> u32 {
        let e = self.basis().exponent();
        self.exps.iter().fold(1, |acc, &c| crate::abelian::lcm(acc, e / gcd(c, e)))
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.modulus.generator() != other.modulus.generator() {
            return Err(Error::Precondition(format!(
                "characters mod ({}) and ({}) cannot be combined",
                self.modulus.generator(),
                other.modulus.generator()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let e = self.basis().exponent();
        Ok(Self {
            modulus: Arc::clone(&self.modulus),
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % e).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let e = self.basis().exponent();
        Self { modulus: Arc::clone(&self.modulus), exps: self.exps.iter().map(|&c| (e - c) % e).collect() }
    }

    /// `ψ(z)` as an exponent of `ζ_E`, `None` when `z` is not coprime to
    /// the modulus.
    pub fn value_exponent(&self, z: GaussianInt) -> Option<u32> {
        self.residue_exponent(self.modulus.residue(z))
    }

    pub fn residue_exponent(&self, residue: u32) -> Option<u32> {
        self.modulus.quotient_of(residue).map(|q| self.basis().evaluate(&self.exps, q as usize))
    }

    /// Exponent of `ζ_E` per residue class (`None` for non-units).
    pub fn residue_table(&self) -> Vec<Option<u32>> {
        (0..self.modulus.norm() as u32).map(|r| self.residue_exponent(r)).collect()
    }

    pub fn value(&self, z: GaussianInt) -> Option<num_complex::Complex64> {
        let e = self.basis().exponent() as f64;
        self.value_exponent(z).map(|k| num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / e))
    }

    fn transport(&self, target: &Arc<GaussianModulus>) -> Self {
        let exps = target
            .basis()
            .generators()
            .iter()
            .map(|&q| {
                let z = target.quotient_rep(q as u32).conj();
                let k = self.value_exponent(z).expect("conjugate of a unit is a unit");
                // Rescale from ζ_E to ζ_E' (the target group has the same structure).
                let (e_src, e_dst) = (self.basis().exponent(), target.basis().exponent());
                debug_assert_eq!(e_src, e_dst);
                k * e_dst / e_src
            })
            .collect();
        Self { modulus: Arc::clone(target), exps }
    }

    /// `z ↦ ψ(z̄)`, a character of the conjugate modulus. Self-conjugate
    /// moduli keep their residue tables.
    pub fn conjugate(&self) -> Result<Self> {
        if self.modulus.is_self_conjugate() {
            return Ok(self.transport(&self.modulus));
        }
        let target = Arc::new(self.modulus.conjugate()?);
        Ok(self.transport(&target))
    }

    /// `ψ(σ(z)) = ψ(z)`.
    pub fn is_conjugation_invariant(&self) -> Result<bool> {
        Ok(self.modulus.is_self_conjugate() && self.conjugate()? == *self)
    }
}

/// A Dirichlet character of `(ℤ/m)^×` for odd `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u32,
    units: Vec<u32>,
    basis: Arc<GroupBasis>,
    exps: Vec<u32>,
}

/// Every Dirichlet character mod `m`.
pub fn dirichlet_characters(m: u32) -> Result<Vec<DirichletCharacter>> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::UnsupportedModulus(format!("Dirichlet modulus {m} must be odd")));
    }
    let units: Vec<u32> = (0..m).filter(|&a| gcd(a, m) == 1).collect();
    let index = |v: u32| units.binary_search(&(v % m)).expect("unit");
    let one = index(1 % m);
    let basis = Arc::new(GroupBasis::new(units.len(), one, |a, b| {
        index(((units[a] as u64 * units[b] as u64) % m as u64) as u32)
    }));
    Ok(basis
        .characters()
        .into_iter()
        .map(|exps| DirichletCharacter { modulus: m, units: units.clone(), basis: Arc::clone(&basis), exps })
        .collect())
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        let e = self.basis.exponent();
        self.exps.iter().fold(1, |acc, &c| crate::abelian::lcm(acc, e / gcd(c, e)))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    /// `χ(a)` as a fraction `k/E` of a full turn, `None` if `gcd(a, m) > 1`.
    fn exponent_at(&self, a: i64) -> Option<(u32, u32)> {
        let r = a.rem_euclid(self.modulus as i64) as u32;
        let i = self.units.binary_search(&r).ok()?;
        Some((self.basis.evaluate(&self.exps, i), self.basis.exponent()))
    }
}

/// Base change of a Dirichlet character to `ℚ(i)`: `ψ(α) = χ(N(α) mod m)`.
pub fn dirichlet_via_norm(chi: &DirichletCharacter) -> Result<GaussianHeckeChar> {
    let modulus = Arc::new(GaussianModulus::from_parts(chi.modulus as i64, 0)?);
    let target_e = modulus.basis().exponent();
    let exps = modulus
        .basis()
        .generators()
        .iter()
        .map(|&q| {
            let z = modulus.quotient_rep(q as u32);
            let (k, e) = chi.exponent_at(z.norm()).expect("norm of a unit is a unit");
            let scaled = k as u64 * target_e as u64;
            assert_eq!(scaled % e as u64, 0, "values lie in the quotient's roots of unity");
            (scaled / e as u64) as u32 % target_e
        })
        .collect();
    GaussianHeckeChar::from_exponents(&modulus, exps)
}
