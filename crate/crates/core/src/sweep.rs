//! Exhaustive and sampled sweeps over abelian models, witness search, and
//! the oracle and projection-formula sweeps.

use std::collections::BTreeMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianModel, Elem};
use crate::error::{Error, Result};
use crate::matching::abelian_matching_unchecked;
use crate::oracle::{
    induced_character, oracle_group, trivial_multiplicity_sparse, CharacterOfA, ClassFunction, ProjectionChecker,
    SparseClassFunction,
};
use crate::par::{map_slice, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Budget {
    /// Every valid triple, stopping after `max_triples` if given.
    Exhaustive { max_triples: Option<u64> },
    /// `samples` uniformly drawn (model, θ₁, θ₂, χ).
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub model: String,
    pub factors: Vec<u32>,
    pub sigma: Vec<Vec<i64>>,
    pub p: u32,
    pub theta1: Vec<u32>,
    pub theta2: Vec<u32>,
    pub chi: Vec<u32>,
    pub chi_invariant: bool,
    pub cells: Vec<(u32, u32)>,
    pub ell: u32,
}

impl Witness {
    fn new(model: &AbelianModel, t1: Elem, t2: Elem, chi: Elem, cells: Vec<(u32, u32)>) -> Self {
        let g = model.group();
        Self {
            model: model.describe(),
            factors: g.factors().to_vec(),
            sigma: model.sigma().matrix().to_vec(),
            p: model.p(),
            theta1: g.coords(t1),
            theta2: g.coords(t2),
            chi: g.coords(chi),
            chi_invariant: model.is_invariant(chi),
            ell: cells.len() as u32,
            cells,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub models: usize,
    pub triples: u64,
    pub max_ell: u32,
    pub histogram: BTreeMap<u32, u64>,
    /// Matrices with two true cells in a row or a column.
    pub structure_violations: u64,
    /// Triples with `ℓ > p`.
    pub bound_violations: u64,
    /// `p = 2` triples with `ℓ ≥ 2` and σ-non-invariant χ.
    pub noninvariant_double_poles: u64,
    pub first_violation: Option<Witness>,
    /// First triple found for each observed `ℓ`.
    pub witnesses: BTreeMap<u32, Witness>,
    pub seed: Option<u64>,
    pub incomplete: bool,
}

impl SweepReport {
    pub fn violations(&self) -> u64 {
        self.structure_violations + self.bound_violations + self.noninvariant_double_poles
    }

    /// Fold `other`, which comes later in sweep order, into `self`.
    fn merge(&mut self, other: SweepReport) {
        self.triples += other.triples;
        self.max_ell = self.max_ell.max(other.max_ell);
        for (ell, n) in other.histogram {
            *self.histogram.entry(ell).or_default() += n;
        }
        self.structure_violations += other.structure_violations;
        self.bound_violations += other.bound_violations;
        self.noninvariant_double_poles += other.noninvariant_double_poles;
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
        for (ell, w) in other.witnesses {
            self.witnesses.entry(ell).or_insert(w);
        }
    }

    fn record(&mut self, model: &AbelianModel, t1: Elem, t2: Elem, chi: Elem, cells: &[(u32, u32)]) {
        let ell = cells.len() as u32;
        let p = model.p();
        self.triples += 1;
        self.max_ell = self.max_ell.max(ell);
        *self.histogram.entry(ell).or_default() += 1;
        let structure_ok = is_partial_permutation(cells);
        let double_ok = !(p == 2 && ell >= 2 && !model.is_invariant(chi));
        self.structure_violations += !structure_ok as u64;
        self.bound_violations += (ell > p) as u64;
        self.noninvariant_double_poles += !double_ok as u64;
        if !(structure_ok && double_ok && ell <= p) && self.first_violation.is_none() {
            self.first_violation = Some(Witness::new(model, t1, t2, chi, cells.to_vec()));
        }
        self.witnesses.entry(ell).or_insert_with(|| Witness::new(model, t1, t2, chi, cells.to_vec()));
    }
}

fn is_partial_permutation(cells: &[(u32, u32)]) -> bool {
    cells.iter().enumerate().all(|(i, &(j, k))| cells[i + 1..].iter().all(|&(j2, k2)| j2 != j && k2 != k))
}

/// Lookup tables for one model: orbits, negated sums, invariance.
struct Kernel<'a> {
    model: &'a AbelianModel,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    orbit: Vec<Vec<u32>>,
    noninvariant: Vec<Elem>,
}

impl<'a> Kernel<'a> {
    fn new(model: &'a AbelianModel) -> Self {
        let g = model.group();
        let order = g.order() as usize;
        let mut add = vec![0u32; order * order];
        for a in g.elements() {
            for b in g.elements() {
                add[a.index() * order + b.index()] = g.add(a, b).0;
            }
        }
        Self {
            model,
            order,
            add,
            neg: g.elements().map(|a| g.neg(a).0).collect(),
            orbit: g.elements().map(|a| model.orbit(a).iter().map(|e| e.0).collect()).collect(),
            noninvariant: g.elements().filter(|&a| !model.is_invariant(a)).collect(),
        }
    }

    /// `v[j][k] = −(σ^j θ₂ + σ^k θ₁)`: cell `(j, k)` is true exactly when χ equals it.
    fn targets(&self, t1: Elem, t2: Elem) -> Vec<u32> {
        let (o1, o2) = (&self.orbit[t1.index()], &self.orbit[t2.index()]);
        o2.iter()
            .flat_map(|&b| o1.iter().map(move |&a| (a, b)))
            .map(|(a, b)| self.neg[self.add[b as usize * self.order + a as usize] as usize])
            .collect()
    }

    fn cells(&self, targets: &[u32], chi: Elem, out: &mut Vec<(u32, u32)>) {
        let p = self.model.p() as usize;
        out.clear();
        for (idx, &v) in targets.iter().enumerate() {
            if v == chi.0 {
                out.push(((idx / p) as u32, (idx % p) as u32));
            }
        }
    }

    fn theta1_unit(&self, t1: Elem) -> SweepReport {
        let mut report = SweepReport::default();
        let mut cells = Vec::new();
        for &t2 in &self.noninvariant {
            let targets = self.targets(t1, t2);
            for chi in self.model.group().elements() {
                self.cells(&targets, chi, &mut cells);
                report.record(self.model, t1, t2, chi, &cells);
            }
        }
        report
    }

    fn triples(&self) -> u64 {
        (self.noninvariant.len() * self.noninvariant.len() * self.order) as u64
    }
}

/// Sweep `models`; deterministic for a given budget regardless of `exec`.
pub fn sweep(models: &[AbelianModel], budget: Budget, exec: Execution) -> SweepReport {
    let kernels: Vec<Kernel> = models.iter().map(Kernel::new).collect();
    let mut report = match budget {
        Budget::Exhaustive { max_triples } => {
            let mut units = Vec::new();
            let mut planned = 0u64;
            let mut incomplete = false;
            'outer: for (m, k) in kernels.iter().enumerate() {
                let per_unit = k.triples() / k.noninvariant.len().max(1) as u64;
                for &t1 in &k.noninvariant {
                    if max_triples.is_some_and(|cap| planned + per_unit > cap) {
                        incomplete = true;
                        break 'outer;
                    }
                    planned += per_unit;
                    units.push((m, t1));
                }
            }
            let parts = map_slice(exec, &units, |&(m, t1)| kernels[m].theta1_unit(t1));
            let mut report = SweepReport::default();
            parts.into_iter().for_each(|part| report.merge(part));
            report.incomplete = incomplete;
            report
        }
        Budget::Sampled { samples, seed } => {
            let usable: Vec<usize> = (0..kernels.len()).filter(|&m| !kernels[m].noninvariant.is_empty()).collect();
            let mut report = SweepReport { seed: Some(seed), ..SweepReport::default() };
            if usable.is_empty() {
                return SweepReport { models: models.len(), ..report };
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<(usize, Elem, Elem, Elem)> = (0..samples)
                .map(|_| {
                    let m = usable[rng.random_range(0..usable.len())];
                    let k = &kernels[m];
                    let t1 = k.noninvariant[rng.random_range(0..k.noninvariant.len())];
                    let t2 = k.noninvariant[rng.random_range(0..k.noninvariant.len())];
                    let chi = Elem(rng.random_range(0..k.order as u32));
                    (m, t1, t2, chi)
                })
                .collect();
            let chunks: Vec<&[(usize, Elem, Elem, Elem)]> = draws.chunks(4096).collect();
            let parts = map_slice(exec, &chunks, |chunk| {
                let mut part = SweepReport::default();
                let mut cells = Vec::new();
                for &(m, t1, t2, chi) in chunk.iter() {
                    let k = &kernels[m];
                    k.cells(&k.targets(t1, t2), chi, &mut cells);
                    part.record(k.model, t1, t2, chi, &cells);
                }
                part
            });
            parts.into_iter().for_each(|part| report.merge(part));
            report
        }
    };
    report.models = models.len();
    report
}

/// First triple in sweep order with `ℓ = target` (default `p`), optionally
/// restricted to σ-non-invariant χ. `None` means the search was exhausted.
pub fn witness_search(
    models: &[AbelianModel],
    target: Option<u32>,
    noninvariant_chi_only: bool,
    exec: Execution,
) -> Option<Witness> {
    for model in models {
        let k = Kernel::new(model);
        let want = target.unwrap_or(model.p());
        let found = map_slice(exec, &k.noninvariant, |&t1| {
            let mut cells = Vec::new();
            for &t2 in &k.noninvariant {
                let targets = k.targets(t1, t2);
                for chi in model.group().elements() {
                    if noninvariant_chi_only && model.is_invariant(chi) {
                        continue;
                    }
                    k.cells(&targets, chi, &mut cells);
                    if cells.len() as u32 == want {
                        return Some(Witness::new(model, t1, t2, chi, cells.clone()));
                    }
                }
            }
            None
        });
        if let Some(w) = found.into_iter().flatten().next() {
            return Some(w);
        }
    }
    None
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub model: String,
    pub theta1: Vec<u32>,
    pub theta2: Vec<u32>,
    pub chi: Vec<u32>,
    pub ell: u32,
    pub multiplicity: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSweepReport {
    pub models: usize,
    pub triples: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<OracleMismatch>,
    /// Histogram of the agreed values.
    pub histogram: BTreeMap<u32, u64>,
}

/// Compare the exact oracle multiplicity with the matching-matrix `ℓ` on
/// every valid triple of every model.
pub fn oracle_sweep(models: &[AbelianModel], exec: Execution) -> Result<OracleSweepReport> {
    let mut report = OracleSweepReport { models: models.len(), ..OracleSweepReport::default() };
    for model in models {
        let group = oracle_group(model)?;
        let base = model.group();
        let induced: Vec<SparseClassFunction> = map_slice(exec, &base.elements().collect::<Vec<_>>(), |&l| {
            SparseClassFunction::from(&induced_character(CharacterOfA::new(l), &group))
        });
        let noninvariant: Vec<Elem> = base.elements().filter(|&a| !model.is_invariant(a)).collect();
        let parts = map_slice(exec, &noninvariant, |&t1| -> Result<OracleSweepReport> {
            let mut part = OracleSweepReport::default();
            for &t2 in &noninvariant {
                for chi in base.elements() {
                    let ell = abelian_matching_unchecked(model, t1, t2, chi).ell();
                    let m = trivial_multiplicity_sparse(
                        &induced[t1.index()],
                        &induced[t2.index()],
                        &induced[chi.index()],
                        &group,
                    );
                    part.triples += 1;
                    match m {
                        Ok(m) if m == ell => *part.histogram.entry(ell).or_default() += 1,
                        Ok(_) | Err(Error::NotAnInteger { .. }) => {
                            part.mismatches += 1;
                            part.first_mismatch.get_or_insert_with(|| OracleMismatch {
                                model: model.describe(),
                                theta1: base.coords(t1),
                                theta2: base.coords(t2),
                                chi: base.coords(chi),
                                ell,
                                multiplicity: m.ok(),
                            });
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Ok(part)
        });
        for part in parts {
            let part = part?;
            report.triples += part.triples;
            report.mismatches += part.mismatches;
            if report.first_mismatch.is_none() {
                report.first_mismatch = part.first_mismatch;
            }
            for (ell, n) in part.histogram {
                *report.histogram.entry(ell).or_default() += n;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionSweepReport {
    pub groups: usize,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

/// The projection formula for every induced character `V = Ind λ` (one per
/// distinct induced character) and every character `W` of `A`, plus `V`
/// running over the characters inflated from `C_p`.
pub fn projection_sweep(models: &[AbelianModel], exec: Execution) -> Result<ProjectionSweepReport> {
    let mut report = ProjectionSweepReport { groups: models.len(), ..ProjectionSweepReport::default() };
    for model in models {
        let group = oracle_group(model)?;
        let base = group.base();
        let action = model.sigma();
        // Ind λ depends only on the σ-orbit of λ under the character action.
        let reps: Vec<Elem> = base
            .elements()
            .filter(|&l| {
                let mut x = l;
                (0..model.p()).all(|_| {
                    x = action.apply(x);
                    x.0 >= l.0
                })
            })
            .collect();
        let mut vs: Vec<ClassFunction> =
            reps.iter().map(|&l| induced_character(CharacterOfA::new(l), &group)).collect();
        vs.extend((0..model.p()).map(|s| ClassFunction::inflated(&group, s)));
        let vs: Vec<SparseClassFunction> = vs.iter().map(SparseClassFunction::from).collect();
        let ws: Vec<(CharacterOfA, SparseClassFunction)> =
            CharacterOfA::all(&group).map(|w| (w, SparseClassFunction::from(&induced_character(w, &group)))).collect();
        let checker = ProjectionChecker::new(&group);
        let results = map_slice(exec, &vs, |v| {
            ws.iter()
                .filter(|(w, ind_w)| !checker.check(v, *w, ind_w))
                .map(|(w, _)| format!("{}: W = {:?}", model.describe(), base.coords(w.exponents())))
                .collect::<Vec<_>>()
        });
        report.checks += (vs.len() * ws.len()) as u64;
        for failures in results {
            report.failures += failures.len() as u64;
            if report.first_failure.is_none() {
                report.first_failure = failures.into_iter().next();
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::abelian_matching;

    fn z7() -> AbelianModel {
        AbelianModel::cyclic(7, 2, 3).unwrap()
    }

    fn swap33() -> AbelianModel {
        AbelianModel::new(vec![3, 3], vec![vec![0, 1], vec![1, 0]], 2).unwrap()
    }

    fn exhaustive() -> Budget {
        Budget::Exhaustive { max_triples: None }
    }

    #[test]
    fn kernel_agrees_with_matching_matrix() {
        for model in [z7(), swap33(), AbelianModel::new(vec![2, 4], vec![vec![1, 0], vec![2, 3]], 2).unwrap()] {
            let k = Kernel::new(&model);
            let mut cells = Vec::new();
            for &t1 in &k.noninvariant {
                for &t2 in &k.noninvariant {
                    let targets = k.targets(t1, t2);
                    for chi in model.group().elements() {
                        k.cells(&targets, chi, &mut cells);
                        let m = abelian_matching(&model, t1, t2, chi).unwrap();
                        assert_eq!(cells, m.true_cells());
                    }
                }
            }
        }
    }

    #[test]
    fn z7_exhaustive() {
        let r = sweep(&[z7()], exhaustive(), Execution::Parallel);
        assert_eq!(r.triples, 6 * 6 * 7);
        assert_eq!(r.max_ell, 3);
        assert_eq!(r.violations(), 0);
        let w = &r.witnesses[&3];
        assert_eq!((w.theta1.clone(), w.theta2.clone(), w.chi.clone()), (vec![1], vec![3], vec![0]));
        assert!(!r.incomplete);
    }

    #[test]
    fn swap_ell_two_needs_invariant_chi() {
        let m = swap33();
        let r = sweep(std::slice::from_ref(&m), exhaustive(), Execution::Sequential);
        assert_eq!(r.max_ell, 2);
        assert_eq!(r.noninvariant_double_poles, 0);
        assert!(r.witnesses[&2].chi_invariant);
        assert_eq!(witness_search(&[m], None, true, Execution::Parallel), None);
    }

    #[test]
    fn empty_family() {
        let r = sweep(&[], exhaustive(), Execution::Parallel);
        assert_eq!(r.models, 0);
        assert_eq!(r.triples, 0);
        assert!(r.histogram.is_empty() && r.witnesses.is_empty());
    }

    #[test]
    fn truncated_sweep_is_incomplete() {
        let r = sweep(&[z7()], Budget::Exhaustive { max_triples: Some(100) }, Execution::Parallel);
        assert!(r.incomplete);
        assert!(r.triples <= 100);
    }

    #[test]
    fn sampled_sweep_is_reproducible() {
        let models = [z7(), swap33()];
        let budget = Budget::Sampled { samples: 10_000, seed: 7 };
        let a = sweep(&models, budget, Execution::Parallel);
        let b = sweep(&models, budget, Execution::Sequential);
        assert_eq!(a, b);
        assert_eq!(a.triples, 10_000);
        assert_eq!(a.seed, Some(7));
        assert_ne!(a, sweep(&models, Budget::Sampled { samples: 10_000, seed: 8 }, Execution::Parallel));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let models = [z7(), swap33()];
        assert_eq!(
            sweep(&models, exhaustive(), Execution::Parallel),
            sweep(&models, exhaustive(), Execution::Sequential)
        );
    }

    #[test]
    fn witness_matches_brute_force() {
        let w = witness_search(&[z7()], None, false, Execution::Parallel).unwrap();
        assert_eq!((w.theta1, w.theta2, w.chi), (vec![1], vec![3], vec![0]));
        assert_eq!(w.cells, vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn oracle_sweep_small() {
        let r = oracle_sweep(&[z7(), swap33()], Execution::Parallel).unwrap();
        assert_eq!(r.mismatches, 0, "{:?}", r.first_mismatch);
        assert_eq!(r.triples, 6 * 6 * 7 + 6 * 6 * 9);
    }

    #[test]
    fn projection_sweep_small() {
        let r = projection_sweep(&[z7(), swap33()], Execution::Parallel).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.checks > 0);
    }
}
