//! Safe belief sets, propositional and temporal, and the harness comparing
//! the sets accepted under different logics.

mod belief;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::premise_horizon;
use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula};
use crate::kripke::{enumerate_models, FiniteModel, Frame, LogicClass, ModelSpace};
use crate::semantics::{consequence_in, Verdict, Witness};
use crate::sets::AtomSet;
use crate::traces::{enumerate_total_lassos, lcm, ltl_model_search, tht_entails_over, tht_extension, LassoShapeSet, ThtLasso};

pub use belief::{BeliefFile, TemporalBeliefSet};

/// Both conditions of a safe-belief check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafeBeliefVerdict {
    /// Condition (1): the premises have a model.
    pub consistent: bool,
    /// A model of the premises when `consistent`.
    pub consistency_witness: Option<Witness>,
    /// Condition (2): a `Refuted` verdict is a premise model missing part
    /// of the belief set.
    pub entailment: Verdict,
}

impl SafeBeliefVerdict {
    pub fn accepted(&self) -> bool {
        self.consistent && !self.entailment.is_refuted()
    }
}

/// `Γ ∪ {¬¬p | p ∈ T} ∪ {¬p | p ∉ T}`
pub fn prop_premises(gamma: &[Formula], alphabet: &Alphabet, t: AtomSet) -> Vec<Formula> {
    let mut premises = gamma.to_vec();
    premises.extend(crate::equilibrium::literal_hypotheses(alphabet, t));
    premises
}

fn atoms_of(alphabet: &Alphabet, t: AtomSet) -> Vec<Formula> {
    t.iter().map(|i| Formula::Atom(alphabet.atoms()[i].clone())).collect()
}

/// First classical valuation of the alphabet satisfying every premise.
fn classical_model(alphabet: &Alphabet, premises: &[Formula]) -> Result<Option<AtomSet>> {
    let n = alphabet.len();
    if n > 24 {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << n,
            budget: 1 << 24,
        });
    }
    for bits in 0..(1u64 << n) {
        let s = AtomSet(bits);
        let lasso = ThtLasso::total(alphabet.clone(), 0, 1, vec![s])?;
        let mut ok = true;
        for p in premises {
            if tht_extension(&lasso, p)?.0 & 1 == 0 {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn propositional_class(logic: LogicClass) -> Result<()> {
    if logic.is_temporal() {
        return Err(Error::InvalidArgument(format!("{logic} is not a propositional logic")));
    }
    Ok(())
}

/// Model space used by [`prop_safe_belief_check`]; HT is always the fixed
/// two-world frame.
pub fn prop_space(logic: LogicClass, alphabet: &Alphabet, max_worlds: usize) -> Result<ModelSpace> {
    propositional_class(logic)?;
    let n = if logic == LogicClass::Ht { 2 } else { max_worlds };
    enumerate_models(logic, alphabet, n)
}

/// Safe-belief check of `T` at a propositional logic. Condition (1) is a
/// classical truth table; condition (2) searches models of the logic with
/// at most `max_worlds` worlds.
pub fn prop_safe_belief_check(
    logic: LogicClass,
    gamma: &[Formula],
    alphabet: &Alphabet,
    t: AtomSet,
    max_worlds: usize,
) -> Result<SafeBeliefVerdict> {
    let space = prop_space(logic, alphabet, max_worlds)?;
    prop_check_in(&space, gamma, t)
}

/// [`prop_safe_belief_check`] over a prepared space.
pub fn prop_check_in(space: &ModelSpace, gamma: &[Formula], t: AtomSet) -> Result<SafeBeliefVerdict> {
    propositional_class(space.class)?;
    if gamma.iter().any(Formula::is_temporal) {
        return Err(Error::TemporalOnPropositional);
    }
    let alphabet = &space.alphabet;
    let premises = prop_premises(gamma, alphabet, t);
    let model = classical_model(alphabet, &premises)?;
    let consistency_witness = match model {
        Some(s) => {
            let frame = Frame::from_pairs(1, &[], None)?;
            Some(Witness::Model {
                model: FiniteModel::new(frame, alphabet.clone(), vec![s])?,
                world: 0,
            })
        }
        None => None,
    };
    Ok(SafeBeliefVerdict {
        consistent: model.is_some(),
        consistency_witness,
        entailment: consequence_in(space, &premises, &atoms_of(alphabet, t))?,
    })
}

/// Intermediate temporal logics with a concrete frame class here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TemporalLogic {
    Tht,
    ItlBd(usize),
}

impl fmt::Display for TemporalLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemporalLogic::Tht => f.write_str("THT"),
            TemporalLogic::ItlBd(n) => write!(f, "ITLbd({n})"),
        }
    }
}

impl FromStr for TemporalLogic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("tht") {
            return Ok(TemporalLogic::Tht);
        }
        match s.parse::<LogicClass>()? {
            LogicClass::ItlBd(n) => Ok(TemporalLogic::ItlBd(n)),
            other => Err(Error::InvalidArgument(format!(
                "`{other}` is not THT or ITLbd(n)"
            ))),
        }
    }
}

/// Search parameters for temporal safe beliefs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalBounds {
    /// Lasso shapes for the LTL consistency check and THT consequence.
    pub shapes: LassoShapeSet,
    /// World bound for ITLbd(n) consequence.
    pub max_worlds: usize,
}

/// Premises of a temporal safe-belief check and the belief atoms they must
/// entail, instantiated up to `horizon`.
pub fn temporal_premises(gamma: &[Formula], t: &TemporalBeliefSet, horizon: usize) -> (Vec<Formula>, Vec<Formula>) {
    let mut premises = gamma.to_vec();
    let mut goals = Vec::new();
    for i in 0..horizon {
        for (k, a) in t.alphabet().atoms().iter().enumerate() {
            let p = Formula::Atom(a.clone());
            if t.contains(i, k) {
                premises.push(Formula::next_n(i, Formula::not(Formula::not(p.clone()))));
                goals.push(Formula::next_n(i, p));
            } else {
                premises.push(Formula::next_n(i, Formula::not(p)));
            }
        }
    }
    (premises, goals)
}

/// Premise horizon for consequence over models with at most `max_worlds`
/// worlds: the orbit of any world has preperiod below `max_worlds` and a
/// period of at most `max_worlds`.
pub fn model_horizon(t: &TemporalBeliefSet, max_worlds: usize) -> usize {
    let loops = (1..=max_worlds.max(1)).fold(1, lcm);
    t.prefix().max(max_worlds.saturating_sub(1)) + lcm(t.loop_len(), loops)
}

/// A prepared temporal check: the ITLbd model space is built once.
pub struct TemporalChecker {
    pub logic: TemporalLogic,
    pub alphabet: Alphabet,
    pub bounds: TemporalBounds,
    space: Option<ModelSpace>,
}

impl TemporalChecker {
    pub fn new(logic: TemporalLogic, alphabet: &Alphabet, bounds: TemporalBounds) -> Result<Self> {
        let space = match logic {
            TemporalLogic::Tht => None,
            TemporalLogic::ItlBd(n) => Some(enumerate_models(LogicClass::ItlBd(n), alphabet, bounds.max_worlds)?),
        };
        Ok(TemporalChecker {
            logic,
            alphabet: alphabet.clone(),
            bounds,
            space,
        })
    }

    pub fn check(&self, gamma: &[Formula], t: &TemporalBeliefSet) -> Result<SafeBeliefVerdict> {
        if t.alphabet() != &self.alphabet {
            return Err(Error::InvalidArgument("belief set and check use different alphabets".into()));
        }
        let shapes = &self.bounds.shapes;
        let h = premise_horizon(t.prefix(), t.loop_len(), shapes);
        let (premises, goals) = temporal_premises(gamma, t, h);
        let model = ltl_model_search(&premises, &self.alphabet, shapes)?;
        let entailment = match &self.space {
            None => tht_entails_over(&self.alphabet, &premises, &goals, shapes)?,
            Some(space) => {
                let h = model_horizon(t, self.bounds.max_worlds);
                let (premises, goals) = temporal_premises(gamma, t, h);
                consequence_in(space, &premises, &goals)?
            }
        };
        Ok(SafeBeliefVerdict {
            consistent: model.is_some(),
            consistency_witness: model.map(|lasso| Witness::Lasso { lasso, instant: 0 }),
            entailment,
        })
    }
}

/// Temporal safe-belief check of `t` at `logic`. Condition (1) searches total
/// lassos of the shapes; condition (2) searches lassos (THT) or models of at
/// most `bounds.max_worlds` worlds (ITLbd(n)).
pub fn temporal_safe_belief_check(
    logic: TemporalLogic,
    gamma: &[Formula],
    t: &TemporalBeliefSet,
    bounds: &TemporalBounds,
) -> Result<SafeBeliefVerdict> {
    TemporalChecker::new(logic, t.alphabet(), bounds.clone())?.check(gamma, t)
}

/// Accepted candidates per logic and where the logics disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport<C> {
    pub logics: Vec<String>,
    /// Accepted candidates, per logic, in candidate order.
    pub accepted: Vec<Vec<C>>,
    /// Candidates accepted by some logics and not others, with the per-logic
    /// answers.
    pub differences: Vec<(C, Vec<bool>)>,
}

impl<C> CoincidenceReport<C> {
    pub fn coincide(&self) -> bool {
        self.differences.is_empty()
    }
}

fn tabulate<C: Clone>(logics: Vec<String>, candidates: Vec<C>, answers: Vec<Vec<bool>>) -> CoincidenceReport<C> {
    let accepted = (0..logics.len())
        .map(|l| {
            candidates
                .iter()
                .zip(&answers)
                .filter(|(_, a)| a[l])
                .map(|(c, _)| c.clone())
                .collect()
        })
        .collect();
    let differences = candidates
        .into_iter()
        .zip(answers)
        .filter(|(_, a)| a.iter().any(|&x| x != a[0]))
        .collect();
    CoincidenceReport {
        logics,
        accepted,
        differences,
    }
}

/// Runs the propositional check for every `T ⊆ alphabet` at every logic.
pub fn prop_coincidence(
    gamma: &[Formula],
    alphabet: &Alphabet,
    logics: &[LogicClass],
    max_worlds: usize,
) -> Result<CoincidenceReport<AtomSet>> {
    let spaces = logics
        .iter()
        .map(|&l| prop_space(l, alphabet, max_worlds))
        .collect::<Result<Vec<_>>>()?;
    let candidates: Vec<AtomSet> = (0..1u64 << alphabet.len()).map(AtomSet).collect();
    let answers = candidates
        .par_iter()
        .map(|&t| {
            spaces
                .iter()
                .map(|s| Ok(prop_check_in(s, gamma, t)?.accepted()))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tabulate(logics.iter().map(|l| l.to_string()).collect(), candidates, answers))
}

/// Candidate belief sets: every total lasso of the shapes, in canonical
/// form, once each.
pub fn belief_candidates(alphabet: &Alphabet, shapes: &LassoShapeSet) -> Result<Vec<TemporalBeliefSet>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for t in enumerate_total_lassos(alphabet, shapes)? {
        let c = t.canonical();
        if seen.insert(c.clone()) {
            out.push(TemporalBeliefSet::from_lasso(&c)?);
        }
    }
    Ok(out)
}

/// Runs the temporal check for every candidate belief set at every logic.
pub fn temporal_coincidence(
    gamma: &[Formula],
    alphabet: &Alphabet,
    logics: &[TemporalLogic],
    bounds: &TemporalBounds,
) -> Result<CoincidenceReport<TemporalBeliefSet>> {
    let checkers = logics
        .iter()
        .map(|&l| TemporalChecker::new(l, alphabet, bounds.clone()))
        .collect::<Result<Vec<_>>>()?;
    let candidates = belief_candidates(alphabet, &bounds.shapes)?;
    let answers = candidates
        .par_iter()
        .map(|t| {
            checkers
                .iter()
                .map(|c| Ok(c.check(gamma, t)?.accepted()))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(tabulate(logics.iter().map(|l| l.to_string()).collect(), candidates, answers))
}

#[cfg(test)]
mod tests;
