use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use tel_core::bisim::{greatest_prop_bisim, verify_prop_bisim, verify_temporal_bisim, BisimReport, BisimRelation, RelationFile};
use tel_core::constructions::{self, Surgery};
use tel_core::equilibrium::{
    completion_check_prop, default_prop_probe, default_temporal_probe, ht_equilibrium_models, premise_horizon,
    tel_equilibrium_models, tel_fixpoint_check, MinimalityBounds, Theory,
};
use tel_core::kripke::{atom_names, atom_set, enumerate_models, validate, ModelFile};
use tel_core::safebeliefs::{
    prop_coincidence, prop_safe_belief_check, temporal_coincidence, temporal_safe_belief_check, CoincidenceReport,
    SafeBeliefVerdict, TemporalBeliefSet, TemporalBounds, TemporalLogic,
};
use tel_core::semantics::{consequence_in, frame_counterexample, VALUATION_BUDGET};
use tel_core::traces::{tht_entails_over, LassoFile};
use tel_core::{parse, satisfies, Alphabet, AtomSet, FiniteModel, LassoShapeSet, LogicClass, ThtLasso, Verdict, Witness};

use crate::report::{Report, Status};
use crate::{Command, ContractKind, ShapeArgs};

fn load_model(path: &Path) -> Result<FiniteModel> {
    FiniteModel::load(path).with_context(|| format!("reading model {}", path.display()))
}

fn load_theory(path: &Path) -> Result<Theory> {
    Theory::load(path).with_context(|| format!("reading theory {}", path.display()))
}

fn shapes(s: ShapeArgs) -> Result<LassoShapeSet> {
    Ok(LassoShapeSet::bounded(s.prefix, s.loop_len)?)
}

fn parse_set(alphabet: &Alphabet, list: &str) -> Result<AtomSet> {
    let names = list.split(',').map(str::trim).filter(|s| !s.is_empty());
    Ok(atom_set(alphabet, names)?)
}

fn show_set(alphabet: &Alphabet, s: AtomSet) -> String {
    format!("{{{}}}", atom_names(alphabet, s).join(","))
}

enum Logic {
    Kripke(LogicClass),
    Tht,
}

fn parse_logic(s: &str) -> Result<Logic> {
    if s.eq_ignore_ascii_case("tht") {
        return Ok(Logic::Tht);
    }
    Ok(Logic::Kripke(s.parse()?))
}

/// Exit status of a bounded consequence verdict.
fn verdict_status(v: &Verdict) -> Status {
    match v.label() {
        "refuted" => Status::Refuted,
        "holds" => Status::Holds,
        _ => Status::BoundRelative,
    }
}

fn verdict_report(cmd: &'static str, v: &Verdict) -> Report {
    let mut r = Report::new(cmd, v.label(), verdict_status(v));
    let j = v.to_json();
    r.bounds = j["bounds"].clone();
    r.witness = j["witness"].clone();
    r.result = json!({ "failed": j["failed"] });
    if let tel_core::Outcome::Refuted { witness, failed } = &v.outcome {
        r.line(format!("fails: {failed}"));
        r.line(witness_text(witness));
    }
    r
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Model { model, world } => format!(
            "witness: world {world} of\n{}",
            model.to_json_string()
        ),
        Witness::Lasso { lasso, instant } => format!("witness: instant {instant} of {lasso}"),
    }
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Parse { file } => parse_cmd(file),
        Command::Validate { model } => validate_cmd(model),
        Command::Check { model, world, formula } => check_cmd(model, *world, formula),
        Command::FrameValid { model, formula } => frame_valid_cmd(model, formula),
        Command::Entail {
            logic,
            bound,
            shapes: s,
            theory,
            goals,
        } => entail_cmd(logic, *bound, *s, theory, goals),
        Command::TelSolve {
            prefix,
            loop_len,
            extra_prefix,
            loop_factor,
            theory,
        } => {
            let minimality = MinimalityBounds {
                extra_prefix: *extra_prefix,
                loop_factor: *loop_factor,
            };
            tel_solve_cmd(*prefix, *loop_len, minimality, theory)
        }
        Command::EqSolve { theory } => eq_solve_cmd(theory),
        Command::CompletionCheck { theory, set } => completion_cmd(theory, set),
        Command::FixpointCheck {
            shapes: s,
            theory,
            lasso,
        } => fixpoint_cmd(*s, theory, lasso),
        Command::SafeBeliefs {
            logic,
            bound,
            shapes: s,
            set,
            belief,
            theory,
        } => safe_beliefs_cmd(logic, *bound, *s, set.as_deref(), belief.as_deref(), theory),
        Command::Coincide {
            logics,
            bound,
            shapes: s,
            theory,
        } => coincide_cmd(logics, *bound, *s, theory),
        Command::BisimVerify {
            left,
            right,
            rel,
            k_bound,
        } => bisim_verify_cmd(left, right, rel, *k_bound),
        Command::BisimGreatest { left, right } => bisim_greatest_cmd(left, right),
        Command::Contract { kind, model, world, out } => contract_cmd(*kind, model, *world, out.as_deref()),
    }
}

fn parse_cmd(file: &Path) -> Result<Report> {
    let th = load_theory(file)?;
    let alphabet = th.alphabet();
    let mut r = Report::new("parse", "ok", Status::Holds);
    for f in &th.formulas {
        r.line(f.to_string());
    }
    r.result = json!({
        "atoms": names(&alphabet),
        "temporal": th.is_temporal(),
        "formulas": th.formulas.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(r)
}

fn names(a: &Alphabet) -> Vec<String> {
    a.atoms().iter().map(ToString::to_string).collect()
}

fn validate_cmd(path: &Path) -> Result<Report> {
    let m = load_model(path)?;
    let rep = validate(&m);
    let mut r = Report::new("validate", "ok", Status::Holds);
    r.result = serde_json::to_value(&rep)?;
    if let Value::Object(map) = &r.result {
        for (k, v) in map {
            r.text.push(format!("{k}: {v}"));
        }
    }
    Ok(r)
}

fn check_cmd(path: &Path, world: usize, formula: &str) -> Result<Report> {
    let m = load_model(path)?;
    let phi = parse(formula)?;
    let holds = satisfies(&m, world, &phi)?;
    let (label, status) = if holds { ("true", Status::Holds) } else { ("false", Status::Refuted) };
    let mut r = Report::new("check", label, status);
    r.result = json!({ "world": world, "formula": phi.to_string(), "holds": holds });
    Ok(r)
}

fn frame_valid_cmd(path: &Path, formula: &str) -> Result<Report> {
    let m = load_model(path)?;
    let phi = parse(formula)?;
    let r = match frame_counterexample(&m, &phi, VALUATION_BUDGET)? {
        None => Report::new("frame-valid", "valid", Status::Holds),
        Some((model, world)) => {
            let w = Witness::Model { model, world };
            let mut r = Report::new("frame-valid", "refuted", Status::Refuted);
            r.line(witness_text(&w));
            r.witness = w.to_json();
            r
        }
    };
    Ok(r)
}

fn entail_cmd(logic: &str, bound: usize, s: ShapeArgs, theory: &Path, goals: &Path) -> Result<Report> {
    let th = load_theory(theory)?;
    let goals = load_theory(goals)?;
    let alphabet = th.alphabet().union(&goals.alphabet())?;
    let v = match parse_logic(logic)? {
        Logic::Tht => tht_entails_over(&alphabet, &th.formulas, &goals.formulas, &shapes(s)?)?,
        Logic::Kripke(class) => {
            let n = if class == LogicClass::Ht { 2 } else { bound };
            consequence_in(&enumerate_models(class, &alphabet, n)?, &th.formulas, &goals.formulas)?
        }
    };
    Ok(verdict_report("entail", &v))
}

fn lasso_json(t: &ThtLasso) -> Value {
    serde_json::to_value(LassoFile::from_lasso(t)).expect("lasso serializes")
}

fn tel_solve_cmd(prefix: usize, loop_len: usize, minimality: MinimalityBounds, theory: &Path) -> Result<Report> {
    let th = load_theory(theory)?;
    let shapes = LassoShapeSet::bounded(prefix, loop_len)?;
    let res = tel_equilibrium_models(&th.formulas, &th.alphabet(), &shapes, minimality)?;
    let mut r = if res.models.is_empty() {
        Report::new("tel-solve", "none", Status::Refuted)
    } else {
        Report::new("tel-solve", "found", Status::Holds)
    };
    for m in &res.models {
        r.line(m.to_string());
    }
    r.bounds = json!({ "search": res.search_bounds, "minimality": res.minimality_bounds });
    r.result = json!({ "models": res.models.iter().map(lasso_json).collect::<Vec<_>>() });
    Ok(r)
}

fn require_propositional(th: &Theory) -> Result<()> {
    if th.is_temporal() {
        bail!(tel_core::Error::TemporalOnPropositional);
    }
    Ok(())
}

fn eq_solve_cmd(theory: &Path) -> Result<Report> {
    let th = load_theory(theory)?;
    require_propositional(&th)?;
    let a = th.alphabet();
    let res = ht_equilibrium_models(&th.formulas, &a)?;
    let mut r = if res.models.is_empty() {
        Report::new("eq-solve", "none", Status::Refuted)
    } else {
        Report::new("eq-solve", "found", Status::Holds)
    };
    for &m in &res.models {
        r.line(show_set(&a, m));
    }
    r.bounds = json!({ "logic": "HT", "alphabet": names(&a), "exact": true });
    r.result = json!({ "models": res.models.iter().map(|&m| atom_names(&a, m)).collect::<Vec<_>>() });
    Ok(r)
}

fn completion_cmd(theory: &Path, set: &str) -> Result<Report> {
    let th = load_theory(theory)?;
    require_propositional(&th)?;
    let a = th.alphabet();
    let t = parse_set(&a, set)?;
    let probe = default_prop_probe(&th.formulas, &a);
    let holds = completion_check_prop(&th.formulas, &a, t, &probe)?;
    let mut r = if holds {
        Report::new("completion-check", "holds", Status::Holds)
    } else {
        Report::new("completion-check", "fails", Status::Refuted)
    };
    r.bounds = json!({ "logic": "HT", "alphabet": names(&a), "exact": true });
    r.result = json!({ "set": atom_names(&a, t), "probe_size": probe.len() });
    Ok(r)
}

fn fixpoint_cmd(s: ShapeArgs, theory: &Path, lasso: &Path) -> Result<Report> {
    let th = load_theory(theory)?;
    let t = ThtLasso::load(lasso).with_context(|| format!("reading lasso {}", lasso.display()))?;
    let a = th.alphabet().union(t.alphabet())?;
    let shapes = shapes(s)?;
    let probe = default_temporal_probe(&th.formulas, &a, premise_horizon(t.prefix(), t.loop_len(), &shapes));
    let rep = tel_fixpoint_check(&th.formulas, &a, &t, &probe, &shapes)?;
    let mut r = if rep.holds {
        Report::new("fixpoint-check", "holds", Status::Holds)
    } else {
        Report::new("fixpoint-check", "fails", Status::Refuted)
    };
    if let Some(m) = &rep.mismatch {
        r.line(format!("mismatch: {m}"));
    }
    r.bounds = serde_json::to_value(&rep.bounds)?;
    r.result = json!({
        "mismatch": rep.mismatch.as_ref().map(ToString::to_string),
        "probe_size": probe.len(),
    });
    Ok(r)
}

fn temporal_logic(l: &str) -> Result<Option<TemporalLogic>> {
    match parse_logic(l)? {
        Logic::Tht => Ok(Some(TemporalLogic::Tht)),
        Logic::Kripke(LogicClass::ItlBd(n)) => Ok(Some(TemporalLogic::ItlBd(n))),
        Logic::Kripke(c) if c.is_temporal() => bail!(tel_core::Error::InvalidArgument(format!(
            "safe beliefs are checked at THT or ITLbd(n), not {c}"
        ))),
        Logic::Kripke(_) => Ok(None),
    }
}

fn belief_report(cmd: &'static str, v: &SafeBeliefVerdict) -> Report {
    let mut r = verdict_report(cmd, &v.entailment);
    if !v.consistent {
        r.verdict = "inconsistent".into();
        r.status = Status::Refuted;
        r.text.clear();
        r.line("condition 1 fails: premises have no classical model");
    } else if v.entailment.is_refuted() {
        r.verdict = "not-entailed".into();
        r.text.insert(0, "condition 2 fails".into());
    } else {
        r.verdict = if v.entailment.bounds.exact { "accepted" } else { "accepted-up-to-bound" }.into();
    }
    r.result = json!({
        "consistent": v.consistent,
        "consistency_witness": v.consistency_witness.as_ref().map(Witness::to_json),
        "entailment": v.entailment.to_json(),
    });
    r
}

fn safe_beliefs_cmd(
    logic: &str,
    bound: usize,
    s: ShapeArgs,
    set: Option<&str>,
    belief: Option<&Path>,
    theory: &Path,
) -> Result<Report> {
    let th = load_theory(theory)?;
    match temporal_logic(logic)? {
        None => {
            require_propositional(&th)?;
            let Logic::Kripke(class) = parse_logic(logic)? else { unreachable!() };
            if belief.is_some() {
                bail!(tel_core::Error::InvalidArgument("use --set for propositional belief sets".into()));
            }
            let a = th.alphabet();
            match set {
                Some(set) => {
                    let t = parse_set(&a, set)?;
                    Ok(belief_report("safe-beliefs", &prop_safe_belief_check(class, &th.formulas, &a, t, bound)?))
                }
                None => {
                    let rep = prop_coincidence(&th.formulas, &a, &[class], bound)?;
                    Ok(accepted_report(&rep, |t| show_set(&a, *t), |t| json!(atom_names(&a, *t))))
                }
            }
        }
        Some(tl) => {
            if set.is_some() {
                bail!(tel_core::Error::InvalidArgument("use --belief for temporal belief sets".into()));
            }
            let bounds = TemporalBounds {
                shapes: shapes(s)?,
                max_worlds: bound,
            };
            match belief {
                Some(path) => {
                    let t = TemporalBeliefSet::load(path).with_context(|| format!("reading belief set {}", path.display()))?;
                    Ok(belief_report("safe-beliefs", &temporal_safe_belief_check(tl, &th.formulas, &t, &bounds)?))
                }
                None => {
                    let rep = temporal_coincidence(&th.formulas, &th.alphabet(), &[tl], &bounds)?;
                    Ok(accepted_report(&rep, ToString::to_string, |t| serde_json::to_value(t).expect("belief serializes")))
                }
            }
        }
    }
}

fn accepted_report<C>(rep: &CoincidenceReport<C>, text: impl Fn(&C) -> String, js: impl Fn(&C) -> Value) -> Report {
    let acc = &rep.accepted[0];
    let mut r = if acc.is_empty() {
        Report::new("safe-beliefs", "none", Status::Refuted)
    } else {
        Report::new("safe-beliefs", "found", Status::Holds)
    };
    for t in acc {
        r.line(text(t));
    }
    r.result = json!({ "logic": rep.logics[0], "accepted": acc.iter().map(js).collect::<Vec<_>>() });
    r
}

fn coincide_cmd(logics: &[String], bound: usize, s: ShapeArgs, theory: &Path) -> Result<Report> {
    if logics.len() < 2 {
        bail!(tel_core::Error::InvalidArgument("--logics needs at least two logics".into()));
    }
    let th = load_theory(theory)?;
    let a = th.alphabet();
    let temporal: Vec<Option<TemporalLogic>> = logics.iter().map(|l| temporal_logic(l)).collect::<Result<_>>()?;
    let mut r = if temporal.iter().all(Option::is_some) {
        let tls: Vec<TemporalLogic> = temporal.into_iter().flatten().collect();
        let bounds = TemporalBounds {
            shapes: shapes(s)?,
            max_worlds: bound,
        };
        let rep = temporal_coincidence(&th.formulas, &a, &tls, &bounds)?;
        let mut r = coincide_report(&rep, ToString::to_string, |t| serde_json::to_value(t).expect("belief serializes"));
        r.bounds = json!({ "shapes": bounds.shapes.shapes(), "max_worlds": bound });
        r
    } else if temporal.iter().all(Option::is_none) {
        require_propositional(&th)?;
        let classes: Vec<LogicClass> = logics.iter().map(|l| l.parse()).collect::<tel_core::Result<_>>()?;
        let rep = prop_coincidence(&th.formulas, &a, &classes, bound)?;
        let mut r = coincide_report(&rep, |t| show_set(&a, *t), |t| json!(atom_names(&a, *t)));
        r.bounds = json!({ "max_worlds": bound });
        r
    } else {
        bail!(tel_core::Error::InvalidArgument("cannot mix propositional and temporal logics".into()));
    };
    r.bounds["alphabet"] = json!(names(&a));
    Ok(r)
}

fn coincide_report<C>(rep: &CoincidenceReport<C>, text: impl Fn(&C) -> String, js: impl Fn(&C) -> Value) -> Report {
    let mut r = if rep.coincide() {
        Report::new("coincide", "coincide", Status::Holds)
    } else {
        Report::new("coincide", "differ", Status::Refuted)
    };
    for (l, acc) in rep.logics.iter().zip(&rep.accepted) {
        r.line(format!("{l}: {}", acc.iter().map(&text).collect::<Vec<_>>().join(" ")));
    }
    for (c, answers) in &rep.differences {
        r.line(format!("differs on {}: {answers:?}", text(c)));
    }
    r.result = json!({
        "logics": rep.logics,
        "accepted": rep.accepted.iter().map(|a| a.iter().map(&js).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "differences": rep.differences.iter().map(|(c, a)| json!({ "candidate": js(c), "accepted": a })).collect::<Vec<_>>(),
    });
    r
}

fn bisim_report(cmd: &'static str, rep: &BisimReport) -> Report {
    let mut r = match &rep.violation {
        None => Report::new(cmd, "bisimulation", Status::Holds),
        Some(v) => {
            let mut r = Report::new(cmd, "violated", Status::Refuted);
            r.line(v.to_string());
            r
        }
    };
    r.line(format!(
        "checked: {}",
        rep.checked.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    ));
    if let Some(k) = rep.k_bound {
        r.bounds = json!({ "k_bound": k });
    }
    r.result = serde_json::to_value(rep).expect("report serializes");
    r
}

fn verify(m1: &FiniteModel, m2: &FiniteModel, rel: &BisimRelation, k: Option<usize>) -> Result<BisimReport> {
    Ok(if m1.is_temporal() && m2.is_temporal() {
        verify_temporal_bisim(m1, m2, rel, k)?
    } else {
        verify_prop_bisim(m1, m2, rel)?
    })
}

fn bisim_verify_cmd(left: &Path, right: &Path, rel: &Path, k: Option<usize>) -> Result<Report> {
    let (m1, m2) = (load_model(left)?, load_model(right)?);
    let file = RelationFile::load(rel).with_context(|| format!("reading relation {}", rel.display()))?;
    Ok(bisim_report("bisim-verify", &verify(&m1, &m2, &file.relation(), k)?))
}

fn bisim_greatest_cmd(left: &Path, right: &Path) -> Result<Report> {
    let (m1, m2) = (load_model(left)?, load_model(right)?);
    let rel = greatest_prop_bisim(&m1, &m2);
    let file = RelationFile::new(left.display().to_string(), right.display().to_string(), &rel);
    let mut r = if rel.is_empty() {
        Report::new("bisim-greatest", "empty", Status::Refuted)
    } else {
        Report::new("bisim-greatest", "found", Status::Holds)
    };
    r.line(file.to_json_string());
    r.result = serde_json::to_value(&file)?;
    Ok(r)
}

fn contract_cmd(kind: ContractKind, path: &Path, world: usize, out: Option<&Path>) -> Result<Report> {
    let m = load_model(path)?;
    let outcome = match kind {
        ContractKind::Ht => constructions::contract_to_ht(&m, world).map(Built::Model),
        ContractKind::Merge => constructions::merge_maximals_prop(&m, world).map(Built::Model),
        ContractKind::MergeT => constructions::merge_maximals_temporal(&m, world).map(Built::Model),
        ContractKind::Tht => constructions::contract_to_tht(&m, world).map(|s| Built::Lasso(s.lasso, Some(s.relation))),
        ContractKind::Classical => constructions::extract_classical_trace(&m, world).map(|t| Built::Lasso(t, None)),
    };
    let built = match outcome {
        Ok(b) => b,
        Err(tel_core::Error::Precondition(msg)) => {
            let mut r = Report::new("contract", "precondition-failed", Status::Refuted);
            r.line(msg.clone());
            r.result = json!({ "reason": msg });
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let (text, target, root, relation, check) = match &built {
        Built::Model(s) => {
            let rep = verify(&m, &s.model, &s.relation, None)?;
            let file = ModelFile::from_model(&s.model);
            (s.model.to_json_string(), serde_json::to_value(&file)?, s.root, Some(&s.relation), Some(rep))
        }
        Built::Lasso(t, rel) => {
            let rep = match rel {
                Some(rel) => Some(verify(&m, &t.to_model()?, rel, None)?),
                None => None,
            };
            (t.to_json_string(), lasso_json(t), 0, rel.as_ref(), rep)
        }
    };
    if let Some(out) = out {
        std::fs::write(out, text.clone() + "\n").with_context(|| format!("writing {}", out.display()))?;
    }
    let verified = check.as_ref().is_none_or(BisimReport::holds);
    let mut r = if verified {
        Report::new("contract", "ok", Status::Holds)
    } else {
        Report::new("contract", "relation-violated", Status::Refuted)
    };
    r.line(text);
    if let Built::Lasso(t, _) = &built {
        r.line(format!("lasso: {t}"));
    }
    if let Some(rep) = &check {
        match &rep.violation {
            None => r.line("relation verified"),
            Some(v) => r.line(v.to_string()),
        };
    }
    r.result = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "target": target,
        "root": root,
        "relation": relation.map(|rel| rel.pairs().map(|(a, b)| [a, b]).collect::<Vec<_>>()),
        "check": check,
    });
    Ok(r)
}

enum Built {
    Model(Surgery),
    Lasso(ThtLasso, Option<BisimRelation>),
}
