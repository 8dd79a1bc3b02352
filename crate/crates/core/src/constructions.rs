//! Model surgeries that shrink the maximal layer of a model or contract it
//! to a here-and-there shape, each returning the bisimulation that ties the
//! result to its input.

use crate::bisim::BisimRelation;
use crate::error::{Error, Result};
use crate::formula::{weak_em_instances, Alphabet, Formula};
use crate::kripke::{maximal_worlds, Depth, orbit, validate, FiniteModel, Frame, World, MAX_WORLDS};
use crate::semantics::{extension, extension_all, val_on};
use crate::sets::{AtomSet, WorldSet};
use crate::traces::{Layer, ThtLasso};

/// A transformed model, its root, and the relation from input worlds
/// (left) to output worlds (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surgery {
    pub model: FiniteModel,
    pub root: World,
    pub relation: BisimRelation,
}

/// Maximal worlds of `set` agree on `alphabet`; returns the first
/// disagreeing pair otherwise.
fn maximal_agreement(m: &FiniteModel, set: WorldSet, alphabet: &Alphabet) -> Option<(World, World)> {
    let first = set.first()?;
    let v = val_on(m, first, alphabet);
    set.iter().find(|&x| val_on(m, x, alphabet) != v).map(|x| (first, x))
}

/// Whether `¬p ∨ ¬¬p` holds at `w` for every atom of `alphabet`. When it
/// does, the maximal worlds above `w` must agree on the alphabet; a
/// disagreement is reported as an internal error.
pub fn weak_em_holds(m: &FiniteModel, w: World, alphabet: &Alphabet) -> Result<bool> {
    m.check_world(w)?;
    if !extension_all(m, &weak_em_instances(alphabet))?.contains(w) {
        return Ok(false);
    }
    if let Some((a, b)) = maximal_agreement(m, maximal_worlds(m, w)?, alphabet) {
        return Err(Error::Internal(format!(
            "weak excluded middle holds at {w} but maximal worlds {a} and {b} differ"
        )));
    }
    Ok(true)
}

fn require_propositional(m: &FiniteModel, what: &str) -> Result<()> {
    if m.is_temporal() {
        return Err(Error::Precondition(format!("{what} applies to propositional models")));
    }
    Ok(())
}

/// Replaces the maximal worlds above `w` by one fresh world valued like the
/// lowest of them. The output carries the non-maximal worlds above `w` in
/// their original order, followed by the fresh world.
pub fn merge_maximals_prop(m: &FiniteModel, w: World) -> Result<Surgery> {
    require_propositional(m, "propositional merge")?;
    if !weak_em_holds(m, w, m.alphabet())? {
        return Err(Error::Precondition(format!("weak excluded middle fails at {w}")));
    }
    let f = m.frame();
    let maxes = maximal_worlds(m, w)?;
    let kept: Vec<World> = (f.up(w) - maxes).iter().collect();
    let u = kept.len();
    let index = |v: World| kept.iter().position(|&x| x == v);
    let mut up = Vec::with_capacity(u + 1);
    let mut val = Vec::with_capacity(u + 1);
    for &v in &kept {
        let mut s: WorldSet = (f.up(v) - maxes).iter().filter_map(index).collect();
        s.insert(u);
        up.push(s);
        val.push(m.val(v));
    }
    up.push(WorldSet::singleton(u));
    val.push(m.val(maxes.first().expect("a finite upset has a maximal world")));
    let model = FiniteModel::new(Frame::from_up_sets(up, None)?, m.alphabet().clone(), val)?;
    let relation = BisimRelation::new(
        kept.iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .chain(maxes.iter().map(|x| (x, u))),
    );
    let root = index(w).unwrap_or(u);
    Ok(Surgery { model, root, relation })
}

/// Contracts the upset of `w` onto the two-world frame. Requires a unique
/// maximal world `u` above `w` and every world strictly above `w` valued
/// like `u`.
pub fn contract_to_ht(m: &FiniteModel, w: World) -> Result<Surgery> {
    require_propositional(m, "contraction to here-and-there")?;
    let f = m.frame();
    let maxes = maximal_worlds(m, w)?;
    if maxes.len() != 1 {
        return Err(Error::Precondition(format!(
            "{w} sees {} maximal worlds, expected one",
            maxes.len()
        )));
    }
    let u = maxes.first().expect("one maximal world");
    let t = m.val(u);
    if let Some(v) = f.strict_up(w).iter().find(|&v| m.val(v) != t) {
        return Err(Error::Precondition(format!(
            "world {v} above {w} is not valued like the maximal world {u}"
        )));
    }
    let frame = Frame::from_pairs(2, &[(0, 1)], None)?;
    let model = FiniteModel::new(frame, m.alphabet().clone(), vec![m.val(w), t])?;
    let mut relation = BisimRelation::new(f.strict_up(w).iter().map(|v| (v, 1)));
    relation.insert(w, 0);
    relation.insert(u, 1);
    Ok(Surgery { model, root: 0, relation })
}

fn require_persistent(m: &FiniteModel) -> Result<()> {
    let r = validate(m);
    if !r.temporal {
        return Err(Error::TemporalOnPropositional);
    }
    if !(r.forward_confluent && r.backward_confluent) {
        return Err(Error::Precondition(
            "model is not forward and backward confluent".into(),
        ));
    }
    Ok(())
}

/// `□(¬p ∨ ¬¬p)` for every atom of `alphabet`.
pub fn temporal_weak_em(alphabet: &Alphabet) -> Vec<Formula> {
    weak_em_instances(alphabet).into_iter().map(Formula::always).collect()
}

/// Temporal counterpart of [`merge_maximals_prop`] on a persistent model.
///
/// The upset of each orbit state `S^i(w)` is copied once per orbit position
/// without its maximal worlds, and a fresh maximal world `u_i` is placed on
/// top. Copies make upsets of different positions disjoint, so a world
/// above two orbit states still sees a single maximal world per position.
/// The successor of a copy is the copy of its successor at the next
/// position, or `u_{i+1}` when that successor is maximal. Output worlds are
/// grouped by position, each group ending with its `u_i`; the root is 0.
pub fn merge_maximals_temporal(m: &FiniteModel, w: World) -> Result<Surgery> {
    m.check_world(w)?;
    require_persistent(m)?;
    if !extension_all(m, &temporal_weak_em(m.alphabet()))?.contains(w) {
        return Err(Error::Precondition(format!(
            "weak excluded middle does not hold always from {w}"
        )));
    }
    let f = m.frame();
    let succ = f.succ().expect("persistent models are temporal");
    let o = orbit(m, w)?;
    let len = o.len();
    let next = |i: usize| o.position(i + 1);
    // per position: kept worlds in index order, output offset of the group
    let mut groups: Vec<(Vec<World>, WorldSet, usize)> = Vec::with_capacity(len);
    let mut total = 0;
    for i in 0..len {
        let s = o.at(i);
        let maxes = f.maximal_above(s);
        if let Some((a, b)) = maximal_agreement(m, maxes, m.alphabet()) {
            return Err(Error::Internal(format!(
                "maximal worlds {a} and {b} above orbit state {s} differ"
            )));
        }
        let kept: Vec<World> = (f.up(s) - maxes).iter().collect();
        groups.push((kept.clone(), maxes, total));
        total += kept.len() + 1;
    }
    if total > MAX_WORLDS {
        return Err(Error::Capacity(format!("merged model needs {total} worlds")));
    }
    let copy = |i: usize, v: World| -> Option<World> {
        let (kept, _, off) = &groups[i];
        kept.iter().position(|&x| x == v).map(|k| off + k)
    };
    let top = |i: usize| groups[i].2 + groups[i].0.len();
    let mut up = vec![WorldSet::EMPTY; total];
    let mut s_out = vec![0; total];
    let mut val = vec![AtomSet::EMPTY; total];
    let mut relation = BisimRelation::default();
    for i in 0..len {
        let (kept, maxes, _) = &groups[i];
        let j = next(i);
        for &v in kept {
            let me = copy(i, v).expect("kept world has a copy");
            let mut s: WorldSet = f.up(v).iter().filter_map(|x| copy(i, x)).collect();
            s.insert(top(i));
            up[me] = s;
            val[me] = m.val(v);
            s_out[me] = copy(j, succ[v]).unwrap_or_else(|| top(j));
            relation.insert(v, me);
        }
        let u = top(i);
        up[u] = WorldSet::singleton(u);
        val[u] = m.val(maxes.first().expect("a finite upset has a maximal world"));
        s_out[u] = top(j);
        for x in maxes.iter() {
            relation.insert(x, u);
        }
    }
    let model = FiniteModel::new(Frame::from_up_sets(up, Some(s_out))?, m.alphabet().clone(), val)?;
    let (before, after) = (validate(m), validate(&model));
    if !(after.forward_confluent && after.backward_confluent && depth_le(after.depth, before.depth)) {
        return Err(Error::Internal(format!(
            "merged model fails re-validation: forward {}, backward {}, depth {:?} vs {:?}",
            after.forward_confluent, after.backward_confluent, after.depth, before.depth
        )));
    }
    Ok(Surgery { model, root: 0, relation })
}

fn depth_le(a: Depth, b: Depth) -> bool {
    match (a, b) {
        (Depth::Finite(x), Depth::Finite(y)) => x <= y,
        (_, Depth::Infinite) => true,
        (Depth::Infinite, Depth::Finite(_)) => false,
    }
}

/// A lasso and the relation from the input model to
/// [`ThtLasso::to_model`] of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoSurgery {
    pub lasso: ThtLasso,
    pub relation: BisimRelation,
}

/// Contracts the orbit of `w` onto a THT lasso with `H_i = V(S^i w)` and
/// `T_i = V(u_i)`, where `u_i` must be the unique maximal world above
/// `S^i w`.
///
/// Worlds strictly above `S^i w` are paired with `(i, there)`, and so is
/// everything reachable from them by the successor at the matching
/// position. Every such world must be valued `T_i`. When the model keeps
/// the successors of upper worlds strictly above the next orbit state this
/// is exactly the upset condition; otherwise the extra requirement keeps
/// the relation closed under successors.
pub fn contract_to_tht(m: &FiniteModel, w: World) -> Result<LassoSurgery> {
    m.check_world(w)?;
    let r = validate(m);
    if !r.temporal {
        return Err(Error::TemporalOnPropositional);
    }
    if !r.forward_confluent {
        return Err(Error::Precondition("model is not forward confluent".into()));
    }
    let f = m.frame();
    let succ = f.succ().expect("temporal");
    let o = orbit(m, w)?;
    let len = o.len();
    let mut h = Vec::with_capacity(len);
    let mut t = Vec::with_capacity(len);
    for i in 0..len {
        let s = o.at(i);
        let maxes = f.maximal_above(s);
        if maxes.len() != 1 {
            return Err(Error::Precondition(format!(
                "instant {i}: world {s} sees {} maximal worlds, expected one",
                maxes.len()
            )));
        }
        h.push(m.val(s));
        t.push(m.val(maxes.first().expect("one maximal world")));
    }
    // upper[i]: worlds paired with (i, there)
    let mut upper: Vec<WorldSet> = (0..len)
        .map(|i| {
            let s = o.at(i);
            f.strict_up(s) | f.maximal_above(s)
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..len {
            let j = o.position(i + 1);
            for v in upper[i].iter() {
                if !upper[j].contains(succ[v]) {
                    upper[j].insert(succ[v]);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..len {
        if let Some(v) = upper[i].iter().find(|&v| m.val(v) != t[i]) {
            return Err(Error::Precondition(format!(
                "instant {i}: world {v} is not valued like the maximal world above {}",
                o.at(i)
            )));
        }
    }
    let lasso = ThtLasso::new(m.alphabet().clone(), o.preperiod, o.period, h, t)?;
    let mut relation = BisimRelation::default();
    for i in 0..len {
        relation.insert(o.at(i), lasso.world_of(i, Layer::Here));
        for v in upper[i].iter() {
            relation.insert(v, lasso.world_of(i, Layer::There));
        }
    }
    Ok(LassoSurgery { lasso, relation })
}

/// Lowest-index maximal world above `w`.
pub fn classical_source(m: &FiniteModel, w: World) -> Result<World> {
    Ok(maximal_worlds(m, w)?.first().expect("a finite upset has a maximal world"))
}

/// Total lasso read along the orbit of the lowest maximal world above `w`
/// of a persistent model.
pub fn extract_classical_trace(m: &FiniteModel, w: World) -> Result<ThtLasso> {
    m.check_world(w)?;
    require_persistent(m)?;
    let v = classical_source(m, w)?;
    let o = orbit(m, v)?;
    let states = (0..o.len()).map(|i| m.val(o.at(i))).collect();
    ThtLasso::total(m.alphabet().clone(), o.preperiod, o.period, states)
}

/// Probe formulas that hold at `w` but fail at `(0, here)` of `lasso`.
pub fn lost_in_trace<'a>(m: &FiniteModel, w: World, lasso: &ThtLasso, probe: &'a [Formula]) -> Result<Vec<&'a Formula>> {
    let mut lost = Vec::new();
    for phi in probe {
        if extension(m, phi)?.contains(w) && crate::traces::tht_extension(lasso, phi)?.0 & 1 == 0 {
            lost.push(phi);
        }
    }
    Ok(lost)
}

#[cfg(test)]
mod tests;
