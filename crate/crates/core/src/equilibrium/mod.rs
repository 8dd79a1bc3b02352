//! Equilibrium models of propositional and temporal theories, and the two
//! fixpoint checks that characterize them.

mod theory;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{closure_all, temporal_atoms, Alphabet, Formula};
use crate::semantics::Bounds;
use crate::sets::AtomSet;
use crate::traces::{enumerate_total_lassos, lcm, models_of, tht_extension, LassoShapeSet, ThtLasso, TRACE_BUDGET};

pub use theory::Theory;

/// Evaluates propositional `phi` at the here world of the two-world model
/// `(h, t)`.
pub fn ht_satisfies(alphabet: &Alphabet, h: AtomSet, t: AtomSet, phi: &Formula) -> Result<bool> {
    let lasso = ThtLasso::new(alphabet.clone(), 0, 1, vec![h], vec![t])?;
    Ok(tht_extension(&lasso, phi)?.0 & 1 == 1)
}

fn ht_satisfies_all(alphabet: &Alphabet, h: AtomSet, t: AtomSet, gamma: &[Formula]) -> Result<bool> {
    let lasso = ThtLasso::new(alphabet.clone(), 0, 1, vec![h], vec![t])?;
    for g in gamma {
        if tht_extension(&lasso, g)?.0 & 1 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_propositional(gamma: &[Formula]) -> Result<()> {
    if gamma.iter().any(Formula::is_temporal) {
        return Err(Error::TemporalOnPropositional);
    }
    Ok(())
}

fn check_atoms(alphabet: &Alphabet, formulas: &[Formula]) -> Result<()> {
    formulas.iter().try_for_each(|f| alphabet.check(f))
}

/// Subsets of `t`, in increasing bitmask order.
fn subsets(t: AtomSet) -> impl Iterator<Item = AtomSet> {
    let t = t.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == t { None } else { Some((cur.wrapping_sub(t)) & t) };
        Some(AtomSet(cur))
    })
}

/// How far the minimality search of a temporal candidate reaches beyond the
/// shapes that present its trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityBounds {
    /// Extra prefix positions added to each presentation.
    pub extra_prefix: usize,
    /// Loop lengths are also tried at every multiple up to this factor.
    pub loop_factor: usize,
}

impl Default for MinimalityBounds {
    fn default() -> Self {
        MinimalityBounds {
            extra_prefix: 0,
            loop_factor: 1,
        }
    }
}

/// Equilibrium witnesses with the bounds they are relative to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumResult<M> {
    pub alphabet: Alphabet,
    pub models: Vec<M>,
    /// `None` for the exact propositional search.
    pub search_bounds: Option<Bounds>,
    pub minimality_bounds: Option<MinimalityBounds>,
}

/// Atom sets `T` such that `(T, T)` satisfies `gamma` and no `(H, T)` with
/// `H ⊂ T` does. Exact; results in increasing bitmask order.
pub fn ht_equilibrium_models(gamma: &[Formula], alphabet: &Alphabet) -> Result<EquilibriumResult<AtomSet>> {
    require_propositional(gamma)?;
    check_atoms(alphabet, gamma)?;
    let needed = 3u128.saturating_pow(alphabet.len() as u32);
    if needed > TRACE_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: TRACE_BUDGET,
        });
    }
    let all = AtomSet::full(alphabet.len());
    let found: Vec<Option<AtomSet>> = subsets(all)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|t| -> Result<Option<AtomSet>> {
            if !ht_satisfies_all(alphabet, t, t, gamma)? {
                return Ok(None);
            }
            for h in subsets(t) {
                if h != t && ht_satisfies_all(alphabet, h, t, gamma)? {
                    return Ok(None);
                }
            }
            Ok(Some(t))
        })
        .collect::<Result<_>>()?;
    Ok(EquilibriumResult {
        alphabet: alphabet.clone(),
        models: found.into_iter().flatten().collect(),
        search_bounds: None,
        minimality_bounds: None,
    })
}

/// Presentations of `c` searched for a smaller model: `c`'s own shape and
/// every shape of the set that can carry its trace, widened by `mb`.
fn minimality_shapes(c: &ThtLasso, shapes: &LassoShapeSet, mb: MinimalityBounds) -> Vec<(usize, usize)> {
    let mut base = vec![(c.prefix(), c.loop_len())];
    base.extend(
        shapes
            .shapes()
            .iter()
            .filter(|&&(l, k)| l >= c.prefix() && k % c.loop_len() == 0),
    );
    let mut out: Vec<(usize, usize)> = base
        .iter()
        .flat_map(|&(l, k)| (0..=mb.extra_prefix).flat_map(move |e| (1..=mb.loop_factor.max(1)).map(move |f| (l + e, k * f))))
        .collect();
    out.sort_by_key(|&(l, k)| (l + k, l));
    out.dedup();
    out
}

/// A lasso `< t` (same T-trace, smaller H somewhere) satisfying `gamma` at
/// `(0, here)`, searched over the given presentations of `t`.
pub fn smaller_model(t: &ThtLasso, gamma: &[Formula], presentations: &[(usize, usize)]) -> Result<Option<ThtLasso>> {
    for &(l, k) in presentations {
        let u = t.unroll(l, k)?;
        let there = u.there().to_vec();
        let bits: u32 = there.iter().map(|s| s.len() as u32).sum();
        if bits > 40 {
            return Err(Error::BudgetExceeded {
                needed: 1u128 << bits,
                budget: TRACE_BUDGET,
            });
        }
        // odometer over H_i ⊆ T_i
        let mut h: Vec<AtomSet> = vec![AtomSet::EMPTY; there.len()];
        loop {
            if h != there {
                let cand = ThtLasso::new(t.alphabet().clone(), l, k, h.clone(), there.clone())?;
                let mut ok = true;
                for g in gamma {
                    if tht_extension(&cand, g)?.0 & 1 == 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(cand));
                }
            }
            let mut i = 0;
            loop {
                if i == h.len() {
                    break;
                }
                if h[i] == there[i] {
                    h[i] = AtomSet::EMPTY;
                    i += 1;
                } else {
                    h[i] = AtomSet((h[i].0.wrapping_sub(there[i].0)) & there[i].0);
                    break;
                }
            }
            if i == h.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Temporal equilibrium models among the total lassos of `shapes`, each
/// reported once in canonical form, in search order of its first
/// presentation.
pub fn tel_equilibrium_models(
    gamma: &[Formula],
    alphabet: &Alphabet,
    shapes: &LassoShapeSet,
    minimality: MinimalityBounds,
) -> Result<EquilibriumResult<ThtLasso>> {
    check_atoms(alphabet, gamma)?;
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for t in enumerate_total_lassos(alphabet, shapes)? {
        let mut ok = true;
        for g in gamma {
            if tht_extension(&t, g)?.0 & 1 == 0 {
                ok = false;
                break;
            }
        }
        if ok {
            let c = t.canonical();
            if seen.insert(c.clone()) {
                candidates.push(c);
            }
        }
    }
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|c| Ok(smaller_model(c, gamma, &minimality_shapes(c, shapes, minimality))?.is_none()))
        .collect::<Result<_>>()?;
    let models = candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    let space = shapes.count(alphabet.len(), true);
    Ok(EquilibriumResult {
        alphabet: alphabet.clone(),
        models,
        search_bounds: Some(Bounds::lassos("THT", alphabet, shapes, space)),
        minimality_bounds: Some(minimality),
    })
}

/// Probe members true at the root of a total model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryOf {
    pub probe: Vec<Formula>,
    pub holds: Vec<Formula>,
}

impl TheoryOf {
    pub fn contains(&self, phi: &Formula) -> bool {
        self.holds.contains(phi)
    }
}

/// Probe members true at `(0, here)` of a total lasso.
pub fn theory_of(t: &ThtLasso, probe: &[Formula]) -> Result<TheoryOf> {
    if !t.is_total() {
        return Err(Error::Precondition("theory_of needs a total model".into()));
    }
    let mut holds = Vec::new();
    for phi in probe {
        if tht_extension(t, phi)?.0 & 1 == 1 {
            holds.push(phi.clone());
        }
    }
    Ok(TheoryOf {
        probe: probe.to_vec(),
        holds,
    })
}

/// [`theory_of`] for the total two-world model on `t`.
pub fn theory_of_atoms(alphabet: &Alphabet, t: AtomSet, probe: &[Formula]) -> Result<TheoryOf> {
    theory_of(&ThtLasso::total(alphabet.clone(), 0, 1, vec![t])?, probe)
}

/// `closure(Γ)` plus every atom and its negation.
pub fn default_prop_probe(gamma: &[Formula], alphabet: &Alphabet) -> Vec<Formula> {
    let mut probe = closure_all(gamma);
    for a in alphabet.atoms() {
        let p = Formula::Atom(a.clone());
        probe.push(p.clone());
        probe.push(Formula::not(p));
    }
    dedup(probe)
}

fn dedup(items: Vec<Formula>) -> Vec<Formula> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|f| seen.insert(f.clone())).collect()
}

/// `{¬p | p ∉ T} ∪ {¬¬p | p ∈ T}`
pub fn literal_hypotheses(alphabet: &Alphabet, t: AtomSet) -> Vec<Formula> {
    alphabet
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let p = Formula::not(Formula::Atom(a.clone()));
            if t.contains(i) {
                Formula::not(p)
            } else {
                p
            }
        })
        .collect()
}

/// Whether the total model `(T, T)` matches the HT consequences of
/// `Γ ∪ {¬p | p ∉ T} ∪ {¬¬p | p ∈ T}` on every probe formula. HT
/// consequence is decided over all two-world models of the alphabet.
pub fn completion_check_prop(gamma: &[Formula], alphabet: &Alphabet, t: AtomSet, probe: &[Formula]) -> Result<bool> {
    require_propositional(gamma)?;
    require_propositional(probe)?;
    check_atoms(alphabet, gamma)?;
    check_atoms(alphabet, probe)?;
    let mut premises = gamma.to_vec();
    premises.extend(literal_hypotheses(alphabet, t));
    let mut models = Vec::new();
    for there in subsets(AtomSet::full(alphabet.len())) {
        for here in subsets(there) {
            if ht_satisfies_all(alphabet, here, there, &premises)? {
                models.push((here, there));
            }
        }
    }
    for phi in probe {
        let mut entailed = true;
        for &(h, th) in &models {
            if !ht_satisfies(alphabet, h, th, phi)? {
                entailed = false;
                break;
            }
        }
        if entailed != ht_satisfies(alphabet, t, t, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Instants that premises over a lasso-patterned belief must cover so that
/// every lasso of `shapes` is constrained at every position it has.
pub fn premise_horizon(prefix: usize, loop_len: usize, shapes: &LassoShapeSet) -> usize {
    let loops = (1..=shapes.max_loop()).fold(1, lcm);
    prefix.max(shapes.max_prefix()) + lcm(loop_len, loops)
}

/// `closure(Γ)` plus the temporal atoms `○^i p` below `horizon` and their
/// negations.
pub fn default_temporal_probe(gamma: &[Formula], alphabet: &Alphabet, horizon: usize) -> Vec<Formula> {
    let mut probe = closure_all(gamma);
    for ta in temporal_atoms(alphabet, horizon) {
        let f = ta.to_formula();
        probe.push(f.clone());
        probe.push(Formula::not(f));
    }
    dedup(probe)
}

/// Outcome of [`tel_fixpoint_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixpointReport {
    pub holds: bool,
    /// First probe formula where entailment and membership in `Th(t)`
    /// disagree.
    pub mismatch: Option<Formula>,
    pub bounds: Bounds,
}

/// `{¬○^i p | t ⊭ ○^i p} ∪ {¬¬○^i p | t ⊨ ○^i p}` for instants below
/// `horizon`.
pub fn temporal_hypotheses(t: &ThtLasso, horizon: usize) -> Vec<Formula> {
    temporal_atoms(t.alphabet(), horizon)
        .into_iter()
        .map(|ta| {
            let i = t.alphabet().index_of(&ta.atom).expect("atom of the lasso alphabet");
            let neg = Formula::not(ta.to_formula());
            if t.state(ta.offset).1.contains(i) {
                Formula::not(neg)
            } else {
                neg
            }
        })
        .collect()
}

/// Checks `Γ ∪ Hyp(t) ⊨ φ  ⟺  t ⊨ φ` at `(0, here)` for every probe formula,
/// with THT consequence decided over the lassos of `shapes`.
pub fn tel_fixpoint_check(
    gamma: &[Formula],
    alphabet: &Alphabet,
    t: &ThtLasso,
    probe: &[Formula],
    shapes: &LassoShapeSet,
) -> Result<FixpointReport> {
    if !t.is_total() {
        return Err(Error::Precondition("fixpoint check needs a total lasso".into()));
    }
    let t = t.with_alphabet(alphabet)?;
    check_atoms(alphabet, gamma)?;
    check_atoms(alphabet, probe)?;
    let mut premises = gamma.to_vec();
    premises.extend(temporal_hypotheses(&t, premise_horizon(t.prefix(), t.loop_len(), shapes)));
    let models = models_of(alphabet, &premises, shapes, false)?;
    let bounds = Bounds::lassos("THT", alphabet, shapes, shapes.count(alphabet.len(), false));
    for phi in probe {
        let mut entailed = true;
        for m in &models {
            if tht_extension(m, phi)?.0 & 1 == 0 {
                entailed = false;
                break;
            }
        }
        if entailed != (tht_extension(&t, phi)?.0 & 1 == 1) {
            return Ok(FixpointReport {
                holds: false,
                mismatch: Some(phi.clone()),
                bounds,
            });
        }
    }
    Ok(FixpointReport {
        holds: true,
        mismatch: None,
        bounds,
    })
}

#[cfg(test)]
mod tests;
