//! Finite intuitionistic and intuitionistic-temporal Kripke models.

mod classes;
mod enumerate;
mod json;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Alphabet, Atom};
use crate::sets::{AtomSet, WorldSet};

pub use classes::{Depth, FrameReport, LogicClass, LogicTag};
pub use enumerate::{enumerate_frames, enumerate_models, ModelSpace};
pub use json::ModelFile;

pub type World = usize;

/// Worlds are stored as bits of a `u64`.
pub const MAX_WORLDS: usize = 64;

/// The valuation-free part of a model.
///
/// `up[w]` holds every `v` with `w ≼ v`. Nothing about the relation is
/// assumed here; [`validate`] reports which properties hold.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frame {
    up: Vec<WorldSet>,
    succ: Option<Vec<World>>,
}

impl Frame {
    /// Builds a frame from raw up-sets without closing them.
    pub fn from_up_sets(up: Vec<WorldSet>, succ: Option<Vec<World>>) -> Result<Self> {
        let n = up.len();
        if n == 0 {
            return Err(Error::InvalidModel("a model needs at least one world".into()));
        }
        if n > MAX_WORLDS {
            return Err(Error::Capacity(format!(
                "{n} worlds requested, at most {MAX_WORLDS} are supported"
            )));
        }
        let all = WorldSet::full(n);
        for (w, s) in up.iter().enumerate() {
            if !s.is_subset(all) {
                return Err(Error::InvalidModel(format!(
                    "order relates world {w} to a world outside 0..{n}"
                )));
            }
        }
        if let Some(s) = &succ {
            if s.len() != n {
                return Err(Error::InvalidModel(format!(
                    "succ has {} entries for {n} worlds",
                    s.len()
                )));
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::WorldOutOfRange { world: bad, size: n });
            }
        }
        Ok(Frame { up, succ })
    }

    /// Builds a frame from order pairs, closing reflexively and
    /// transitively. Rejects cycles, since the closure would then not be
    /// antisymmetric.
    pub fn from_pairs(n: usize, pairs: &[(World, World)], succ: Option<Vec<World>>) -> Result<Self> {
        if n > MAX_WORLDS {
            return Err(Error::Capacity(format!(
                "{n} worlds requested, at most {MAX_WORLDS} are supported"
            )));
        }
        let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
        for &(i, j) in pairs {
            for w in [i, j] {
                if w >= n {
                    return Err(Error::WorldOutOfRange { world: w, size: n });
                }
            }
            up[i].insert(j);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i] | up[k];
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidModel(format!(
                        "order is not antisymmetric: worlds {i} and {j} are mutually related"
                    )));
                }
            }
        }
        Frame::from_up_sets(up, succ)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn worlds(&self) -> std::ops::Range<World> {
        0..self.up.len()
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// `{v | w ≼ v}`
    pub fn up(&self, w: World) -> WorldSet {
        self.up[w]
    }

    pub fn up_sets(&self) -> &[WorldSet] {
        &self.up
    }

    /// `{v | v ≼ w}`
    pub fn down(&self, w: World) -> WorldSet {
        self.worlds().filter(|&v| self.up[v].contains(w)).collect()
    }

    pub fn leq(&self, w: World, v: World) -> bool {
        self.up[w].contains(v)
    }

    /// `{v | w ≺ v}`
    pub fn strict_up(&self, w: World) -> WorldSet {
        self.up[w] - WorldSet::singleton(w)
    }

    pub fn is_temporal(&self) -> bool {
        self.succ.is_some()
    }

    pub fn succ(&self) -> Option<&[World]> {
        self.succ.as_deref()
    }

    pub fn succ_of(&self, w: World) -> Result<World> {
        self.succ
            .as_ref()
            .map(|s| s[w])
            .ok_or(Error::TemporalOnPropositional)
    }

    /// `S^k(w)`
    pub fn succ_pow(&self, w: World, k: usize) -> Result<World> {
        let s = self.succ.as_ref().ok_or(Error::TemporalOnPropositional)?;
        let mut x = w;
        for _ in 0..k {
            x = s[x];
        }
        Ok(x)
    }

    /// Maximal elements of `up(w)`.
    pub fn maximal_above(&self, w: World) -> WorldSet {
        self.up[w]
            .iter()
            .filter(|&v| self.strict_up(v).is_empty())
            .collect()
    }

    pub fn is_maximal(&self, w: World) -> bool {
        self.strict_up(w).is_empty()
    }

    /// Upward-closed subsets of the worlds, in increasing bit order.
    pub fn upsets(&self) -> Vec<WorldSet> {
        let n = self.len();
        let mut out = Vec::new();
        if n <= 20 {
            for bits in 0..(1u64 << n) {
                let s = WorldSet(bits);
                if s.iter().all(|w| self.up[w].is_subset(s)) {
                    out.push(s);
                }
            }
        } else {
            // Grow from the empty set by adding one world whose strict
            // upset is already present.
            let mut seen = std::collections::BTreeSet::new();
            let mut stack = vec![WorldSet::EMPTY];
            while let Some(s) = stack.pop() {
                if !seen.insert(s) {
                    continue;
                }
                for w in self.worlds() {
                    if !s.contains(w) && self.strict_up(w).is_subset(s) {
                        stack.push(s | WorldSet::singleton(w));
                    }
                }
            }
            out.extend(seen);
        }
        out
    }

    fn check_world(&self, w: World) -> Result<()> {
        if w >= self.len() {
            Err(Error::WorldOutOfRange { world: w, size: self.len() })
        } else {
            Ok(())
        }
    }
}

/// A frame with a valuation over a declared alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteModel {
    frame: Arc<Frame>,
    alphabet: Alphabet,
    val: Vec<AtomSet>,
}

impl FiniteModel {
    pub fn new(frame: impl Into<Arc<Frame>>, alphabet: Alphabet, val: Vec<AtomSet>) -> Result<Self> {
        let frame = frame.into();
        if val.len() != frame.len() {
            return Err(Error::InvalidModel(format!(
                "valuation has {} entries for {} worlds",
                val.len(),
                frame.len()
            )));
        }
        let declared = AtomSet::full(alphabet.len());
        if let Some(w) = val.iter().position(|v| !v.is_subset(declared)) {
            return Err(Error::InvalidModel(format!(
                "valuation of world {w} mentions an undeclared atom"
            )));
        }
        Ok(FiniteModel { frame, alphabet, val })
    }

    /// Convenience constructor taking order pairs and atom names per world.
    pub fn build<S: AsRef<str>>(
        atoms: &[S],
        order: &[(World, World)],
        succ: Option<Vec<World>>,
        val: &[&[S]],
    ) -> Result<Self> {
        let alphabet = Alphabet::from_names(atoms)?;
        let frame = Frame::from_pairs(val.len(), order, succ)?;
        let val = val
            .iter()
            .map(|names| atom_set(&alphabet, names.iter().map(|s| s.as_ref())))
            .collect::<Result<Vec<_>>>()?;
        FiniteModel::new(frame, alphabet, val)
    }

    /// The frame with the empty alphabet.
    pub fn bare(frame: impl Into<Arc<Frame>>) -> Self {
        let frame = frame.into();
        let val = vec![AtomSet::EMPTY; frame.len()];
        FiniteModel {
            frame,
            alphabet: Alphabet::default(),
            val,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn val(&self, w: World) -> AtomSet {
        self.val[w]
    }

    pub fn valuation(&self) -> &[AtomSet] {
        &self.val
    }

    pub fn atoms_at(&self, w: World) -> Vec<Atom> {
        self.val[w]
            .iter()
            .map(|i| self.alphabet.atoms()[i].clone())
            .collect()
    }

    /// Worlds where `atom` holds; empty for undeclared atoms.
    pub fn extension(&self, atom: &Atom) -> WorldSet {
        match self.alphabet.index_of(atom) {
            Some(i) => self
                .frame
                .worlds()
                .filter(|&w| self.val[w].contains(i))
                .collect(),
            None => WorldSet::EMPTY,
        }
    }

    pub fn is_temporal(&self) -> bool {
        self.frame.is_temporal()
    }

    pub fn check_world(&self, w: World) -> Result<()> {
        self.frame.check_world(w)
    }

    /// Same frame and valuation, re-expressed over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Self> {
        if self.alphabet == *alphabet {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self
            .alphabet
            .atoms()
            .iter()
            .map(|a| {
                alphabet.index_of(a).ok_or_else(|| {
                    Error::InvalidArgument(format!("atom `{a}` missing from the target alphabet"))
                })
            })
            .collect::<Result<_>>()?;
        let val = self
            .val
            .iter()
            .map(|s| s.iter().map(|i| map[i]).collect())
            .collect();
        FiniteModel::new(self.frame.clone(), alphabet.clone(), val)
    }

    pub fn is_monotone(&self) -> bool {
        self.frame
            .worlds()
            .all(|w| self.frame.up(w).iter().all(|v| self.val[w].is_subset(self.val[v])))
    }
}

/// Bitmask of the named atoms.
pub fn atom_set<'a>(alphabet: &Alphabet, names: impl IntoIterator<Item = &'a str>) -> Result<AtomSet> {
    let mut s = AtomSet::EMPTY;
    for n in names {
        let a = Atom::new(n)?;
        let i = alphabet
            .index_of(&a)
            .ok_or_else(|| Error::UnknownAtom(n.to_string()))?;
        s.insert(i);
    }
    Ok(s)
}

/// Names of the atoms in `set`, in alphabet order.
pub fn atom_names(alphabet: &Alphabet, set: AtomSet) -> Vec<String> {
    set.iter()
        .map(|i| alphabet.atoms()[i].to_string())
        .collect()
}

/// Computes every flag of the frame report.
pub fn validate(m: &FiniteModel) -> FrameReport {
    classes::report(m)
}

/// Longest ≼-chain starting at `w`.
pub fn depth_at(m: &FiniteModel, w: World) -> Result<usize> {
    m.check_world(w)?;
    match classes::depths(m.frame()) {
        Some(d) => Ok(d[w]),
        None => Err(Error::InvalidModel("order has a cycle".into())),
    }
}

/// Maximal elements of the subframe generated by `w`.
pub fn maximal_worlds(m: &FiniteModel, w: World) -> Result<WorldSet> {
    m.check_world(w)?;
    Ok(m.frame().maximal_above(w))
}

/// Result of [`generated_subframe`].
#[derive(Clone, Debug)]
pub struct Subframe {
    pub model: FiniteModel,
    /// Index in the new model of the generating world.
    pub root: World,
    /// `map[new] = old`
    pub map: Vec<World>,
}

impl Subframe {
    pub fn new_index(&self, old: World) -> Option<World> {
        self.map.iter().position(|&x| x == old)
    }
}

/// Restricts `m` to the least set containing `w` that is closed upward
/// under ≼ and, for temporal models, under the successor function.
pub fn generated_subframe(m: &FiniteModel, w: World) -> Result<Subframe> {
    m.check_world(w)?;
    let f = m.frame();
    let mut carrier = WorldSet::singleton(w);
    let mut todo = vec![w];
    while let Some(x) = todo.pop() {
        let mut next = f.up(x);
        if let Some(s) = f.succ() {
            next.insert(s[x]);
        }
        for y in (next - carrier).iter() {
            carrier.insert(y);
            todo.push(y);
        }
    }
    restrict(m, carrier, w)
}

/// Restriction to an arbitrary carrier; order, succ and valuation are
/// reindexed in increasing old-index order.
pub(crate) fn restrict(m: &FiniteModel, carrier: WorldSet, root: World) -> Result<Subframe> {
    let f = m.frame();
    let map: Vec<World> = carrier.iter().collect();
    let mut index = vec![usize::MAX; f.len()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    let up = map
        .iter()
        .map(|&old| (f.up(old) & carrier).iter().map(|v| index[v]).collect())
        .collect();
    let succ = match f.succ() {
        Some(s) => {
            let mut out = Vec::with_capacity(map.len());
            for &old in &map {
                if !carrier.contains(s[old]) {
                    return Err(Error::Internal(format!(
                        "carrier is not closed under succ at world {old}"
                    )));
                }
                out.push(index[s[old]]);
            }
            Some(out)
        }
        None => None,
    };
    let val = map.iter().map(|&old| m.val(old)).collect();
    let model = FiniteModel::new(Frame::from_up_sets(up, succ)?, m.alphabet().clone(), val)?;
    Ok(Subframe {
        model,
        root: index[root],
        map,
    })
}

/// The successor orbit of a world: `path[k] = S^k(start)` for
/// `k < preperiod + period`, after which it repeats from `path[preperiod]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitInfo {
    pub start: World,
    pub preperiod: usize,
    pub period: usize,
    pub path: Vec<World>,
}

impl OrbitInfo {
    /// `S^k(start)` for any `k`.
    pub fn at(&self, k: usize) -> World {
        self.path[self.position(k)]
    }

    /// Index into `path` reached after `k` steps.
    pub fn position(&self, k: usize) -> usize {
        if k < self.path.len() {
            k
        } else {
            self.preperiod + (k - self.preperiod) % self.period
        }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

pub fn orbit(m: &FiniteModel, w: World) -> Result<OrbitInfo> {
    m.check_world(w)?;
    let s = m.frame().succ().ok_or(Error::TemporalOnPropositional)?;
    let mut first_seen = vec![usize::MAX; m.len()];
    let mut path = Vec::new();
    let mut x = w;
    while first_seen[x] == usize::MAX {
        first_seen[x] = path.len();
        path.push(x);
        x = s[x];
    }
    let preperiod = first_seen[x];
    Ok(OrbitInfo {
        start: w,
        preperiod,
        period: path.len() - preperiod,
        path,
    })
}
