//! Satisfaction over finite Kripke models, frame validity and bounded
//! consequence.
//!
//! Formulas are evaluated to their extension, the set of worlds where they
//! hold. `φ U ψ` is the least `X` with `X = ψ ∪ (φ ∩ S⁻¹X)` and `φ R ψ` the
//! greatest `X` with `X = ψ ∩ (φ ∪ S⁻¹X)`. Since S is a total function on a
//! finite set, the orbit of any world is eventually periodic, so a witness
//! `k` for until exists iff one exists below the orbit length; Kleene
//! iteration from the empty (full) set reaches exactly those worlds after
//! at most |W| rounds.

mod verdict;

use crate::error::{Error, Result};
use crate::formula::{bd_axiom, Alphabet, Formula};
use crate::kripke::{enumerate_models, FiniteModel, LogicClass, ModelSpace, World};
use crate::sets::{AtomSet, WorldSet};

pub use verdict::{Bounds, Outcome, Verdict, Witness};

/// Default cap on valuations examined by [`frame_valid`].
pub const VALUATION_BUDGET: u128 = 5_000_000;

/// `{w | S(w) ∈ x}`
fn pre(succ: &[World], x: WorldSet) -> WorldSet {
    succ.iter()
        .enumerate()
        .filter(|&(_, &s)| x.contains(s))
        .map(|(w, _)| w)
        .collect()
}

/// Worlds of `m` where `phi` holds.
pub fn extension(m: &FiniteModel, phi: &Formula) -> Result<WorldSet> {
    let f = m.frame();
    let all = f.all();
    Ok(match phi {
        Formula::Atom(a) => {
            if !m.alphabet().contains(a) {
                return Err(Error::UnknownAtom(a.to_string()));
            }
            m.extension(a)
        }
        Formula::Bot => WorldSet::EMPTY,
        Formula::And(l, r) => extension(m, l)? & extension(m, r)?,
        Formula::Or(l, r) => extension(m, l)? | extension(m, r)?,
        Formula::Implies(l, r) => {
            let a = extension(m, l)?;
            let b = extension(m, r)?;
            let bad = a - b;
            f.worlds().filter(|&w| (f.up(w) & bad).is_empty()).collect()
        }
        Formula::Next(body) => {
            let s = f.succ().ok_or(Error::TemporalOnPropositional)?;
            pre(s, extension(m, body)?)
        }
        Formula::Until(l, r) => {
            let s = f.succ().ok_or(Error::TemporalOnPropositional)?;
            let a = extension(m, l)?;
            let b = extension(m, r)?;
            let mut x = WorldSet::EMPTY;
            loop {
                let next = b | (a & pre(s, x));
                if next == x {
                    break x;
                }
                x = next;
            }
        }
        Formula::Release(l, r) => {
            let s = f.succ().ok_or(Error::TemporalOnPropositional)?;
            let a = extension(m, l)?;
            let b = extension(m, r)?;
            let mut x = all;
            loop {
                let next = b & (a | pre(s, x));
                if next == x {
                    break x;
                }
                x = next;
            }
        }
    })
}

pub fn satisfies(m: &FiniteModel, w: World, phi: &Formula) -> Result<bool> {
    m.check_world(w)?;
    Ok(extension(m, phi)?.contains(w))
}

/// Worlds satisfying every member of `gamma`.
pub fn extension_all<'a>(m: &FiniteModel, gamma: impl IntoIterator<Item = &'a Formula>) -> Result<WorldSet> {
    let mut acc = m.frame().all();
    for g in gamma {
        acc = acc & extension(m, g)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// First valuation of `atoms(phi)` on the frame of `m` (its own valuation
/// is ignored) that refutes `phi`, with the lowest refuting world.
pub fn frame_counterexample(
    m: &FiniteModel,
    phi: &Formula,
    budget: u128,
) -> Result<Option<(FiniteModel, World)>> {
    let alphabet = Alphabet::of_formulas([phi]);
    if phi.is_temporal() && !m.is_temporal() {
        return Err(Error::TemporalOnPropositional);
    }
    let space = ModelSpace::from_frames(
        LogicClass::Int,
        alphabet,
        m.len(),
        vec![m.frame().clone()],
    );
    let needed = space.model_count();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let all = m.frame().all();
    for cand in space.models_of(0) {
        let ext = extension(&cand, phi)?;
        if let Some(w) = (all - ext).first() {
            return Ok(Some((cand, w)));
        }
    }
    Ok(None)
}

/// Whether `phi` holds at every world under every monotone valuation of
/// its atoms over the frame of `m`.
pub fn frame_valid(m: &FiniteModel, phi: &Formula) -> Result<bool> {
    frame_valid_with_budget(m, phi, VALUATION_BUDGET)
}

pub fn frame_valid_with_budget(m: &FiniteModel, phi: &Formula, budget: u128) -> Result<bool> {
    Ok(frame_counterexample(m, phi, budget)?.is_none())
}

/// Frame validity of `bd_n`, cross-checked against the depth of the frame.
pub fn validates_bd(m: &FiniteModel, n: usize) -> Result<bool> {
    let valid = frame_valid(m, &bd_axiom(n)?)?;
    let by_depth = match crate::kripke::validate(m).depth {
        crate::kripke::Depth::Finite(d) => d <= n,
        crate::kripke::Depth::Infinite => false,
    };
    if valid != by_depth {
        return Err(Error::Internal(format!(
            "bd_{n} validity ({valid}) disagrees with the depth bound ({by_depth})"
        )));
    }
    Ok(valid)
}

/// Search parameters for [`bounded_consequence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelBounds {
    pub max_worlds: usize,
}

impl Default for ModelBounds {
    fn default() -> Self {
        ModelBounds { max_worlds: 3 }
    }
}

/// Searches the class for a world satisfying all of `gamma` and refuting
/// some member of `delta`. The first model in enumeration order wins, at its
/// lowest refuting world.
pub fn bounded_consequence(
    class: LogicClass,
    gamma: &[Formula],
    delta: &[Formula],
    bounds: ModelBounds,
) -> Result<Verdict> {
    let alphabet = Alphabet::of_formulas(gamma.iter().chain(delta));
    let max_worlds = if class == LogicClass::Ht { 2 } else { bounds.max_worlds };
    let space = enumerate_models(class, &alphabet, max_worlds)?;
    consequence_in(&space, gamma, delta)
}

/// [`bounded_consequence`] over a prepared search space, which must declare
/// every atom of `gamma` and `delta`.
pub fn consequence_in(space: &ModelSpace, gamma: &[Formula], delta: &[Formula]) -> Result<Verdict> {
    for phi in gamma.iter().chain(delta) {
        space.alphabet.check(phi)?;
        if phi.is_temporal() && !space.class.is_temporal() {
            return Err(Error::TemporalOnPropositional);
        }
    }
    let found = space.find_first(|m| refute_at(m, gamma, delta).transpose());
    let bounds = Bounds::models(space);
    match found.transpose()? {
        Some((model, world, failed)) => Ok(Verdict {
            outcome: Outcome::Refuted {
                witness: Witness::Model { model, world },
                failed,
            },
            bounds,
        }),
        None => Ok(Verdict {
            outcome: Outcome::NoCounterexampleUpToBound,
            bounds,
        }),
    }
}

/// Lowest world of `m` satisfying `gamma` and refuting some `delta`, with the
/// first refuted formula.
pub fn refute_at(
    m: &FiniteModel,
    gamma: &[Formula],
    delta: &[Formula],
) -> Result<Option<(FiniteModel, World, Formula)>> {
    let g = extension_all(m, gamma)?;
    if g.is_empty() {
        return Ok(None);
    }
    let mut best: Option<(World, &Formula)> = None;
    for d in delta {
        let bad = g - extension(m, d)?;
        if let Some(w) = bad.first() {
            if best.map_or(true, |(b, _)| w < b) {
                best = Some((w, d));
            }
        }
    }
    Ok(best.map(|(w, d)| (m.clone(), w, d.clone())))
}

/// Valuation bits of `m` restricted to the atoms of the alphabet, for
/// callers that compare worlds across models.
pub fn val_on(m: &FiniteModel, w: World, alphabet: &Alphabet) -> AtomSet {
    alphabet
        .atoms()
        .iter()
        .enumerate()
        .filter(|(_, a)| m.alphabet().index_of(a).is_some_and(|i| m.val(w).contains(i)))
        .map(|(i, _)| i)
        .collect()
}
