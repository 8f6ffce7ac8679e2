//! Subcommand implementations. Each returns a JSON result, a plain-text
//! rendering and an exit code.

use std::fmt::Write as _;

use serde_json::{json, Value};
use tripole_core::hecke::{numeric_triple_estimate, PoleClass, DEFAULT_TAU, DEFAULT_X};
use tripole_core::oracle::{oracle_compare_with, oracle_group, CalculusOutcome};
use tripole_core::{
    dispatch_case, factorize, matching_matrix, oracle_sweep, projection_sweep, sweep, triple_pole_order,
    witness_search, BaseChange, DispatchCase, Execution, RepModel, SweepReport, Witness,
};

use crate::config::{LabelSpec, RunConfig};
use crate::error::{CliError, EXIT_INDETERMINATE, EXIT_INVARIANT, EXIT_OK};
use crate::setup;

pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub exit: u8,
}

pub struct Context {
    pub exec: Execution,
    pub seed: Option<u64>,
    pub float_oracle: bool,
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn pole_order(config: &RunConfig) -> Result<Outcome, CliError> {
    let model = setup::model(config)?;
    let rep = setup::representation(config)?;
    let pi1 = setup::datum(&model, &rep.pi1, "representation.pi1")?;
    let pi2 = setup::datum(&model, &rep.pi2, "representation.pi2")?;
    let chi = setup::label(&model, &rep.chi, "representation.chi")?;
    let case = dispatch_case(&pi1, &pi2);
    let ell = triple_pole_order(&model, &pi1, &pi2, &chi)?;
    let matrix = match (case, pi1.behavior(), pi2.behavior()) {
        (DispatchCase::CuspidalBaseChange, _, _) => None,
        (_, BaseChange::InducedFrom(t1), BaseChange::InducedFrom(t2)) => Some(matching_matrix(&model, t1, t2, &chi)?),
        _ => None,
    };
    let mut text =
        format!("model: {}\ndispatch: {case:?}\nn1 = {}, n2 = {}\n", model_line(&model), pi1.degree(), pi2.degree());
    if let Some(m) = &matrix {
        let _ = writeln!(text, "rows j (sigma^j theta2), columns k (sigma^k theta1):\n{m}");
    } else {
        let _ = writeln!(text, "ell = {ell}");
    }
    Ok(Outcome {
        result: json!({
            "model": model.name(),
            "dispatch": case,
            "degrees": [pi1.degree(), pi2.degree()],
            "matrix": matrix,
            "ell": ell,
        }),
        text,
        exit: EXIT_OK,
    })
}

pub fn factorize_cmd(config: &RunConfig) -> Result<Outcome, CliError> {
    let model = setup::model(config)?;
    let rep = setup::representation(config)?;
    let pi1 = setup::datum(&model, &rep.pi1, "representation.pi1")?;
    let pi2 = setup::datum(&model, &rep.pi2, "representation.pi2")?;
    let chi = setup::label(&model, &rep.chi, "representation.chi")?;
    let factors = factorize(&model, &pi1, &pi2, &chi)?;
    let ell = triple_pole_order(&model, &pi1, &pi2, &chi)?;
    let mut text = format!(
        "model: {}\n{:>3} {:>3}  {:<24} {:<24} {:<10} pole\n",
        model_line(&model),
        "j",
        "k",
        "left",
        "right",
        "twist"
    );
    let mut rows = Vec::new();
    for f in &factors {
        let (l, r, t) = (model.describe_label(&f.left), model.describe_label(&f.right), model.describe_label(&f.twist));
        let _ = writeln!(text, "{:>3} {:>3}  {l:<24} {r:<24} {t:<10} {}", f.j, f.k, f.pole_order);
        rows.push(json!({"j": f.j, "k": f.k, "left": l, "right": r, "twist": t, "pole_order": f.pole_order}));
    }
    let total: u32 = factors.iter().map(|f| f.pole_order).sum();
    let _ = writeln!(text, "sum of pole orders = {total}, ell = {ell}");
    Ok(Outcome {
        result: json!({"model": model.name(), "factors": rows, "pole_order_sum": total, "ell": ell}),
        text,
        exit: EXIT_OK,
    })
}

fn coords(spec: &LabelSpec, at: &str) -> Result<Vec<i64>, CliError> {
    match spec {
        LabelSpec::Coords(c) => Ok(c.clone()),
        other => Err(CliError::Config(format!("at `{at}`: expected coordinates, got {other:?}"))),
    }
}

pub fn oracle_compare_cmd(config: &RunConfig, ctx: &Context) -> Result<Outcome, CliError> {
    let model = setup::abelian_model(config)?;
    let rep = setup::representation(config)?;
    let elem = |spec: &LabelSpec, at: &str| -> Result<_, CliError> {
        model.elem(&coords(spec, at)?).map_err(|e| CliError::Config(format!("at `{at}`: {e}")))
    };
    let t1 = elem(rep.pi1.label(), "representation.pi1")?;
    let t2 = elem(rep.pi2.label(), "representation.pi2")?;
    let chi = elem(&rep.chi, "representation.chi")?;
    let group = oracle_group(&model)?;
    let report = oracle_compare_with(&model, &group, t1, t2, chi, ctx.float_oracle)?;
    let calculus = match &report.calculus {
        CalculusOutcome::Ell(ell) => format!("ell = {ell}"),
        CalculusOutcome::PreconditionViolated(msg) => format!("calculus precondition violated ({msg})"),
    };
    let verdict = match report.equal {
        Some(true) => "equal",
        Some(false) => "MISMATCH",
        None => "not compared",
    };
    let mut text = format!(
        "model: {}\ngroup order: {}\npairing: {}\ncalculus: {calculus}\noracle multiplicity: {}\nverdict: {verdict}\n",
        report.model, report.group_order, report.pairing, report.multiplicity
    );
    if let Some(approx) = report.approximate_multiplicity {
        let _ = writeln!(text, "float oracle: {approx:?}");
    }
    let exit = if report.equal == Some(false) { EXIT_INVARIANT } else { EXIT_OK };
    Ok(Outcome { result: to_value(&report), text, exit })
}

fn witness_line(w: &Witness) -> String {
    format!(
        "{} | theta1 = {:?}, theta2 = {:?}, chi = {:?} (chi invariant: {}) cells {:?}",
        w.model, w.theta1, w.theta2, w.chi, w.chi_invariant, w.cells
    )
}

fn sweep_text(r: &SweepReport) -> String {
    let mut text = format!("models: {}\ntriples: {}\nmax ell: {}\nhistogram:\n", r.models, r.triples, r.max_ell);
    for (ell, n) in &r.histogram {
        let _ = writeln!(text, "  ell = {ell}: {n}");
    }
    let _ = writeln!(
        text,
        "partial-permutation violations: {}\nbound violations: {}\np = 2 double poles with non-invariant chi: {}",
        r.structure_violations, r.bound_violations, r.noninvariant_double_poles
    );
    for (ell, w) in &r.witnesses {
        let _ = writeln!(text, "witness ell = {ell}: {}", witness_line(w));
    }
    if let Some(seed) = r.seed {
        let _ = writeln!(text, "seed: {seed}");
    }
    if r.incomplete {
        let _ = writeln!(text, "INCOMPLETE: budget exhausted");
    }
    text
}

pub fn sweep_cmd(config: &RunConfig, ctx: &Context) -> Result<Outcome, CliError> {
    let task = config.task.sweep.clone().unwrap_or_default();
    let models = setup::family(config, task.family.as_ref())?;
    let budget = task.budget.resolve(ctx.seed)?;
    let report = sweep(&models, budget, ctx.exec);
    let mut text = sweep_text(&report);
    let mut bad = report.violations() > 0;
    let mut result = json!({"sweep": report});
    if let Some(max) = task.oracle_max_order {
        let small: Vec<_> = models.iter().filter(|m| m.group().order() <= max).cloned().collect();
        let o = oracle_sweep(&small, ctx.exec)?;
        let _ = writeln!(text, "oracle: {} models, {} triples, {} mismatches", o.models, o.triples, o.mismatches);
        bad |= o.mismatches > 0;
        result["oracle"] = to_value(&o);
    }
    if task.projection {
        let p = projection_sweep(&models, ctx.exec)?;
        let _ = writeln!(text, "projection formula: {} groups, {} checks, {} failures", p.groups, p.checks, p.failures);
        bad |= p.failures > 0;
        result["projection"] = to_value(&p);
    }
    Ok(Outcome { result, text, exit: if bad { EXIT_INVARIANT } else { EXIT_OK } })
}

pub fn witness_cmd(config: &RunConfig, ctx: &Context) -> Result<Outcome, CliError> {
    let task = config.task.witness.clone().unwrap_or_default();
    let models = setup::family(config, task.family.as_ref())?;
    let found = witness_search(&models, task.target, task.noninvariant_chi_only, ctx.exec);
    let restriction = if task.noninvariant_chi_only { " with sigma-non-invariant chi" } else { "" };
    let text = match &found {
        Some(w) => format!("witness ell = {}: {}\n", w.ell, witness_line(w)),
        None => {
            format!("search exhausted: no configuration{restriction} reaches the target in {} model(s)\n", models.len())
        }
    };
    Ok(Outcome {
        result: json!({
            "models": models.len(),
            "target": task.target,
            "noninvariant_chi_only": task.noninvariant_chi_only,
            "witness": found,
            "exhausted": found.is_none(),
        }),
        text,
        exit: EXIT_OK,
    })
}

pub fn hecke_estimate(config: &RunConfig, ctx: &Context) -> Result<Outcome, CliError> {
    let model = setup::model(config)?;
    if !matches!(model, RepModel::Hecke(_)) {
        return Err(CliError::Config("at `model.kind`: hecke-estimate needs a gaussian model".into()));
    }
    let rep = setup::representation(config)?;
    let hecke = |spec: &LabelSpec, at: &str| -> Result<_, CliError> {
        Ok(setup::label(&model, spec, at)?.as_hecke().cloned().expect("gaussian labels"))
    };
    let t1 = hecke(rep.pi1.label(), "representation.pi1")?;
    let t2 = hecke(rep.pi2.label(), "representation.pi2")?;
    let chi = hecke(&rep.chi, "representation.chi")?;
    let x = config.task.x.unwrap_or(DEFAULT_X);
    let tau = config.task.tau.unwrap_or(DEFAULT_TAU);
    let est = numeric_triple_estimate(&t1, &t2, &chi, x, tau, ctx.exec)?;
    let mut text = format!(
        "model: {}\nX = {x}, tau = {tau}, trivial density = {:.6}\n{:>3} {:>3}  {:<12} {:>10} {:>10}  class\n",
        model_line(&model),
        est.trivial_density,
        "j",
        "k",
        "product",
        "ratio",
        "expected"
    );
    for f in &est.factors {
        let _ = writeln!(
            text,
            "{:>3} {:>3}  {:<12} {:>10.6} {:>10.6}  {:?}",
            f.j,
            f.k,
            format!("{:?}", f.product),
            f.ratio,
            f.expected_ratio,
            f.class
        );
    }
    let ell_hat = est.ell_hat.map_or("indeterminate".to_string(), |l| l.to_string());
    let _ = writeln!(text, "ell_hat = {ell_hat}, symbolic ell = {}, agrees: {}", est.symbolic_ell, est.agrees);
    let exit = if est.factors.iter().any(|f| f.class == PoleClass::Indeterminate) {
        EXIT_INDETERMINATE
    } else if !est.agrees {
        EXIT_INVARIANT
    } else {
        EXIT_OK
    };
    Ok(Outcome { result: to_value(&est), text, exit })
}

fn model_line(model: &RepModel) -> String {
    match model {
        RepModel::Abelian(m) => m.describe(),
        RepModel::Generic(m) => format!("generic relations over p = {}", m.cyclic().p()),
        RepModel::Hecke(h) => format!("Hecke characters of Q(i) mod ({})", h.modulus().generator()),
    }
}
