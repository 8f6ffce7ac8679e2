//! Versioned JSON run configuration.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tripole_core::{Atom, Budget, CatalogueSpec};

use crate::error::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<CyclicBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationBlock>,
    #[serde(default)]
    pub task: TaskBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelBlock {
    Abelian {
        factors: Vec<u32>,
        sigma: Vec<Vec<i64>>,
        #[serde(default)]
        allow_trivial: bool,
    },
    Generic {
        atoms: Vec<Atom>,
        theta1: String,
        theta2: String,
        #[serde(default)]
        chi_invariant: bool,
        #[serde(default)]
        relations: Vec<(u32, u32)>,
    },
    Gaussian {
        /// `[a, b]` for the ideal `(a + b i)`.
        modulus: [i64; 2],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicBlock {
    pub p: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationBlock {
    pub pi1: Constituent,
    pub pi2: Constituent,
    pub chi: LabelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Constituent {
    Induced(LabelSpec),
    StaysCuspidal(LabelSpec),
}

impl Constituent {
    pub fn label(&self) -> &LabelSpec {
        match self {
            Constituent::Induced(l) | Constituent::StaysCuspidal(l) => l,
        }
    }
}

/// Abelian coordinates, Gaussian exponents, a generic atom, or a shift of
/// the generic twisting character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelSpec {
    Coords(Vec<i64>),
    Atom(AtomRef),
    Shift(ChiShift),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomRef {
    pub atom: String,
    #[serde(default)]
    pub shift: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiShift {
    pub shift: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepTask>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessTask>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepTask {
    /// Defaults to the config's own abelian model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub budget: BudgetSpec,
    /// Also compare with the group oracle on models of at most this order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_max_order: Option<u32>,
    /// Also check the projection formula on every model.
    #[serde(default)]
    pub projection: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessTask {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    /// Pole order sought; defaults to `p` of each model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<u32>,
    #[serde(default)]
    pub noninvariant_chi_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Catalogue(CatalogueSpec),
    Models(Vec<ModelSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub factors: Vec<u32>,
    pub sigma: Vec<Vec<i64>>,
    pub p: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BudgetSpec {
    Exhaustive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_triples: Option<u64>,
    },
    Sampled {
        samples: u64,
    },
}

impl Default for BudgetSpec {
    fn default() -> Self {
        BudgetSpec::Exhaustive { max_triples: None }
    }
}

impl BudgetSpec {
    pub fn resolve(self, seed: Option<u64>) -> Result<Budget, CliError> {
        match self {
            BudgetSpec::Exhaustive { max_triples } => Ok(Budget::Exhaustive { max_triples }),
            BudgetSpec::Sampled { samples } => seed
                .map(|seed| Budget::Sampled { samples, seed })
                .ok_or_else(|| CliError::Config("sampled sweeps need an explicit seed (--seed or task.seed)".into())),
        }
    }
}

/// Parse and version-check a configuration; errors carry the JSON path.
pub fn parse(text: &str) -> Result<RunConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("at `{path}`: {}", e.into_inner()))
    })?;
    if config.version != CONFIG_VERSION {
        return Err(CliError::Config(format!(
            "at `version`: unsupported config version {} (expected {CONFIG_VERSION})",
            config.version
        )));
    }
    Ok(config)
}

pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WITNESS: &str = r#"{
        "version": 1,
        "model": {"kind": "abelian", "factors": [7], "sigma": [[2]]},
        "cyclic": {"p": 3},
        "representation": {"pi1": {"induced": [1]}, "pi2": {"induced": [3]}, "chi": [0]}
    }"#;

    #[test]
    fn parses_abelian_config() {
        let c = parse(WITNESS).unwrap();
        assert_eq!(c.cyclic, Some(CyclicBlock { p: 3 }));
        let r = c.representation.unwrap();
        assert_eq!(r.pi1, Constituent::Induced(LabelSpec::Coords(vec![1])));
        assert_eq!(r.chi, LabelSpec::Coords(vec![0]));
    }

    #[test]
    fn unknown_field_reports_path() {
        let text = WITNESS.replace(r#""cyclic": {"p": 3}"#, r#""cyclic": {"p": 3, "q": 1}"#);
        let CliError::Config(msg) = parse(&text).unwrap_err() else { panic!() };
        assert!(msg.contains("cyclic"), "{msg}");
        assert!(msg.contains("unknown field"), "{msg}");
    }

    #[test]
    fn wrong_version_rejected() {
        let text = WITNESS.replace(r#""version": 1"#, r#""version": 2"#);
        assert!(matches!(parse(&text), Err(CliError::Config(_))));
    }

    #[test]
    fn generic_labels() {
        let text = r#"{
            "version": 1,
            "model": {"kind": "generic", "atoms": [{"name": "a", "degree": 2, "noninvariant": true}],
                      "theta1": "a", "theta2": "a", "relations": [[0, 1]]},
            "cyclic": {"p": 2},
            "representation": {"pi1": {"induced": {"atom": "a"}}, "pi2": {"stays_cuspidal": {"atom": "a", "shift": 1}},
                               "chi": {"shift": 0}}
        }"#;
        let r = parse(text).unwrap().representation.unwrap();
        assert_eq!(r.pi2.label(), &LabelSpec::Atom(AtomRef { atom: "a".into(), shift: 1 }));
        assert_eq!(r.chi, LabelSpec::Shift(ChiShift { shift: 0 }));
    }

    #[test]
    fn sampled_budget_needs_seed() {
        let b = BudgetSpec::Sampled { samples: 10 };
        assert!(matches!(b.resolve(None), Err(CliError::Config(_))));
        assert_eq!(b.resolve(Some(3)).unwrap(), Budget::Sampled { samples: 10, seed: 3 });
    }

    #[test]
    fn sweep_task_with_catalogue() {
        let text = r#"{"version": 1, "task": {"sweep": {"family": {"catalogue": {"max_order": 16, "primes": [2, 3]}},
                      "budget": {"sampled": {"samples": 100}}, "oracle_max_order": 9}}}"#;
        let c = parse(text).unwrap();
        let s = c.task.sweep.unwrap();
        assert_eq!(s.budget, BudgetSpec::Sampled { samples: 100 });
        assert!(matches!(s.family, Some(FamilySpec::Catalogue(ref spec)) if spec.max_order == 16));
    }
}
