//! End-to-end numeric estimate of the pole order over `ℚ(i)/ℚ`.

use serde::{Deserialize, Serialize};

use super::character::GaussianHeckeChar;
use super::ideals::{classify_pole_from_histogram, residue_histogram, PoleClass};
use crate::datum::CuspidalDatumF;
use crate::error::{Error, Result};
use crate::label::{CuspidalLabel, HeckeModel, RepModel};
use crate::matching::triple_pole_order;
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericFactor {
    pub j: u32,
    pub k: u32,
    /// Exponents of `σ^j θ₁ · σ^k θ₂ · χ` on the quotient-group generators.
    pub product: Vec<u32>,
    pub exactly_trivial: bool,
    pub ratio: f64,
    pub class: PoleClass,
    /// Limit of the ratio if the product is trivial, else 0.
    pub expected_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericEstimate {
    pub x: u64,
    pub tau: f64,
    pub factors: Vec<NumericFactor>,
    /// `None` if some factor is indeterminate.
    pub ell_hat: Option<u32>,
    pub indeterminate: Vec<(u32, u32)>,
    pub symbolic_ell: u32,
    pub agrees: bool,
    pub trivial_density: f64,
}

/// Classify each of the four Rankin–Selberg factors numerically and compare
/// the sum with the symbolic pole order.
pub fn numeric_triple_estimate(
    theta1: &GaussianHeckeChar,
    theta2: &GaussianHeckeChar,
    chi: &GaussianHeckeChar,
    x: u64,
    tau: f64,
    exec: Execution,
) -> Result<NumericEstimate> {
    let model: RepModel = HeckeModel::new(theta1.modulus().clone())?.into();
    let label = |psi: &GaussianHeckeChar| CuspidalLabel::hecke(psi.clone());
    let pi1 = CuspidalDatumF::induced_from(&model, label(theta1))?;
    let pi2 = CuspidalDatumF::induced_from(&model, label(theta2))?;
    let symbolic_ell = triple_pole_order(&model, &pi1, &pi2, &label(chi))?;

    let hist = residue_histogram(theta1.modulus(), x, exec);
    let density = theta1.modulus().trivial_density();
    let orbit = |psi: &GaussianHeckeChar| -> Result<[GaussianHeckeChar; 2]> { Ok([psi.clone(), psi.conjugate()?]) };
    let (o1, o2) = (orbit(theta1)?, orbit(theta2)?);

    let mut factors = Vec::with_capacity(4);
    for (j, a) in o1.iter().enumerate() {
        for (k, b) in o2.iter().enumerate() {
            let product = a.mul(b)?.mul(chi)?;
            let probe = classify_pole_from_histogram(&product, &hist, x, tau)?;
            let exactly_trivial = product.is_trivial();
            factors.push(NumericFactor {
                j: j as u32,
                k: k as u32,
                product: product.exponents().to_vec(),
                exactly_trivial,
                ratio: probe.ratio,
                class: probe.class,
                expected_ratio: if exactly_trivial { density } else { 0.0 },
            });
        }
    }
    let indeterminate: Vec<(u32, u32)> =
        factors.iter().filter(|f| f.class == PoleClass::Indeterminate).map(|f| (f.j, f.k)).collect();
    let ell_hat =
        if indeterminate.is_empty() { Some(factors.iter().filter_map(|f| f.class.order()).sum()) } else { None };
    Ok(NumericEstimate {
        x,
        tau,
        agrees: ell_hat == Some(symbolic_ell),
        factors,
        ell_hat,
        indeterminate,
        symbolic_ell,
        trivial_density: density,
    })
}

impl NumericEstimate {
    pub fn require_determinate(&self) -> Result<u32> {
        self.ell_hat.ok_or_else(|| {
            Error::Precondition(format!("indeterminate factors at X = {}: {:?}", self.x, self.indeterminate))
        })
    }
}
