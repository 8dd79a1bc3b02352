//! Intuitionistic and intuitionistic-temporal bisimulations: verification
//! with first-violation certificates, the greatest propositional
//! bisimulation, and an invariance harness over formula probes.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{orbit, FiniteModel, World};
use crate::semantics::extension;

/// A relation between the worlds of a left and a right model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BisimRelation {
    pairs: BTreeSet<(World, World)>,
}

impl BisimRelation {
    pub fn new(pairs: impl IntoIterator<Item = (World, World)>) -> Self {
        BisimRelation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn identity(m: &FiniteModel) -> Self {
        BisimRelation::new(m.frame().worlds().map(|w| (w, w)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (World, World)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains(&self, w1: World, w2: World) -> bool {
        self.pairs.contains(&(w1, w2))
    }

    pub fn insert(&mut self, w1: World, w2: World) -> bool {
        self.pairs.insert((w1, w2))
    }

    pub fn remove(&mut self, w1: World, w2: World) -> bool {
        self.pairs.remove(&(w1, w2))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Same relation read right to left.
    pub fn converse(&self) -> Self {
        BisimRelation::new(self.pairs().map(|(a, b)| (b, a)))
    }

    fn check_range(&self, m1: &FiniteModel, m2: &FiniteModel) -> Result<()> {
        for (a, b) in self.pairs() {
            m1.check_world(a)?;
            m2.check_world(b)?;
        }
        Ok(())
    }
}

/// Clauses of the bisimulation definition. There is no C4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    C5,
    C6,
    C7,
    C8,
    C9,
}

pub const PROP_CONDITIONS: [Condition; 3] = [Condition::C1, Condition::C2, Condition::C3];
pub const TEMPORAL_CONDITIONS: [Condition; 8] = [
    Condition::C1,
    Condition::C2,
    Condition::C3,
    Condition::C5,
    Condition::C6,
    Condition::C7,
    Condition::C8,
    Condition::C9,
];

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// First failing clause, at the lowest failing pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub pair: (World, World),
    /// The unmatched world for C2/C3, the successor pair for C5, the
    /// universally chosen offset for C6-C9.
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}, {}): {}", self.condition, self.pair.0, self.pair.1, self.detail)
    }
}

/// Outcome of a verification: `violation` is `None` iff every checked
/// condition holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BisimReport {
    pub checked: Vec<Condition>,
    pub violation: Option<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_bound: Option<usize>,
}

impl BisimReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Atom names true at a world, for comparing models over different
/// alphabets.
fn names(m: &FiniteModel, w: World) -> BTreeSet<&str> {
    m.val(w).iter().map(|i| m.alphabet().atoms()[i].as_str()).collect()
}

fn same_val(m1: &FiniteModel, w1: World, m2: &FiniteModel, w2: World) -> bool {
    if m1.alphabet() == m2.alphabet() {
        m1.val(w1) == m2.val(w2)
    } else {
        names(m1, w1) == names(m2, w2)
    }
}

fn prop_violation(m1: &FiniteModel, m2: &FiniteModel, r: &BisimRelation) -> Option<Violation> {
    let (f1, f2) = (m1.frame(), m2.frame());
    for (a, b) in r.pairs() {
        if !same_val(m1, a, m2, b) {
            return Some(Violation {
                condition: Condition::C1,
                pair: (a, b),
                detail: format!("valuations {:?} and {:?} differ", names(m1, a), names(m2, b)),
            });
        }
        if let Some(v1) = f1.up(a).iter().find(|&v1| !f2.up(b).iter().any(|v2| r.contains(v1, v2))) {
            return Some(Violation {
                condition: Condition::C2,
                pair: (a, b),
                detail: format!("left move to {v1} has no partner above {b}"),
            });
        }
        if let Some(v2) = f2.up(b).iter().find(|&v2| !f1.up(a).iter().any(|v1| r.contains(v1, v2))) {
            return Some(Violation {
                condition: Condition::C3,
                pair: (a, b),
                detail: format!("right move to {v2} has no partner above {a}"),
            });
        }
    }
    None
}

/// Checks C1-C3 for every pair.
pub fn verify_prop_bisim(m1: &FiniteModel, m2: &FiniteModel, r: &BisimRelation) -> Result<BisimReport> {
    r.check_range(m1, m2)?;
    Ok(BisimReport {
        checked: PROP_CONDITIONS.to_vec(),
        violation: prop_violation(m1, m2, r),
        k_bound: None,
    })
}

/// Largest relation satisfying C1-C3, by refinement from the C1-compatible
/// pairs.
pub fn greatest_prop_bisim(m1: &FiniteModel, m2: &FiniteModel) -> BisimRelation {
    let (f1, f2) = (m1.frame(), m2.frame());
    let mut r = BisimRelation::new(
        f1.worlds()
            .flat_map(|a| f2.worlds().map(move |b| (a, b)))
            .filter(|&(a, b)| same_val(m1, a, m2, b)),
    );
    loop {
        let bad: Vec<_> = r
            .pairs()
            .filter(|&(a, b)| {
                let forth = f1.up(a).iter().all(|v1| f2.up(b).iter().any(|v2| r.contains(v1, v2)));
                let back = f2.up(b).iter().all(|v2| f1.up(a).iter().any(|v1| r.contains(v1, v2)));
                !(forth && back)
            })
            .collect();
        if bad.is_empty() {
            return r;
        }
        for (a, b) in bad {
            r.remove(a, b);
        }
    }
}

/// `∀ka ∃kb: m(ka, kb) ∧ ∀jb < kb ∃ja < ka: m(ja, jb)`, with all offsets
/// below `k`. Returns the first `ka` without a witness.
fn until_clause(k: usize, m: impl Fn(usize, usize) -> bool) -> Option<usize> {
    // covered[jb]: some ja < ka has m(ja, jb)
    let mut covered = vec![false; k];
    for ka in 0..k {
        let mut found = false;
        for kb in 0..k {
            if m(ka, kb) {
                found = true;
                break;
            }
            if !covered[kb] {
                break;
            }
        }
        if !found {
            return Some(ka);
        }
        for (jb, c) in covered.iter_mut().enumerate() {
            *c = *c || m(ka, jb);
        }
    }
    None
}

/// Checks C1-C3 and C5 exactly and C6-C9 with offsets below the bound,
/// which defaults per pair to `(ρ1+π1)·(ρ2+π2)` of the two orbits.
pub fn verify_temporal_bisim(
    m1: &FiniteModel,
    m2: &FiniteModel,
    r: &BisimRelation,
    k_bound: Option<usize>,
) -> Result<BisimReport> {
    r.check_range(m1, m2)?;
    let (f1, f2) = (m1.frame(), m2.frame());
    let (s1, s2) = match (f1.succ(), f2.succ()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::TemporalOnPropositional),
    };
    let report = |violation| BisimReport {
        checked: TEMPORAL_CONDITIONS.to_vec(),
        violation,
        k_bound,
    };
    if let Some(v) = prop_violation(m1, m2, r) {
        return Ok(report(Some(v)));
    }
    for (a, b) in r.pairs() {
        if !r.contains(s1[a], s2[b]) {
            return Ok(report(Some(Violation {
                condition: Condition::C5,
                pair: (a, b),
                detail: format!("successors ({}, {}) are not related", s1[a], s2[b]),
            })));
        }
    }
    // fwd[x][y]: some (v1, v2) ∈ Z with x ≼ v1 and v2 ≼ y
    // bwd[x][y]: some (v1, v2) ∈ Z with v1 ≼ x and y ≼ v2
    let (n1, n2) = (m1.len(), m2.len());
    let mut fwd = vec![vec![false; n2]; n1];
    let mut bwd = vec![vec![false; n2]; n1];
    for (v1, v2) in r.pairs() {
        for x in f1.down(v1).iter() {
            for y in f2.up(v2).iter() {
                fwd[x][y] = true;
            }
        }
        for x in f1.up(v1).iter() {
            for y in f2.down(v2).iter() {
                bwd[x][y] = true;
            }
        }
    }
    for (a, b) in r.pairs() {
        let (o1, o2) = (orbit(m1, a)?, orbit(m2, b)?);
        let k = k_bound.unwrap_or((o1.preperiod + o1.period) * (o2.preperiod + o2.period));
        let p1: Vec<World> = (0..k).map(|i| o1.at(i)).collect();
        let p2: Vec<World> = (0..k).map(|i| o2.at(i)).collect();
        let clauses: [(Condition, Option<usize>, &str); 4] = [
            (Condition::C6, until_clause(k, |i, j| fwd[p1[i]][p2[j]]), "k1"),
            (Condition::C7, until_clause(k, |i, j| bwd[p1[j]][p2[i]]), "k2"),
            (Condition::C8, until_clause(k, |i, j| fwd[p1[j]][p2[i]]), "k2"),
            (Condition::C9, until_clause(k, |i, j| bwd[p1[i]][p2[j]]), "k1"),
        ];
        for (condition, failed, name) in clauses {
            if let Some(at) = failed {
                return Ok(report(Some(Violation {
                    condition,
                    pair: (a, b),
                    detail: format!("no witness for {name} = {at} below bound {k}"),
                })));
            }
        }
    }
    Ok(report(None))
}

/// Verifies `r` (temporally when both models are temporal) and then
/// returns the first probe formula on which `w1` and `w2` disagree.
pub fn invariance_harness(
    m1: &FiniteModel,
    w1: World,
    m2: &FiniteModel,
    w2: World,
    r: &BisimRelation,
    probe: &[Formula],
) -> Result<Option<Formula>> {
    if !r.contains(w1, w2) {
        return Err(Error::Precondition(format!("({w1}, {w2}) is not in the relation")));
    }
    let report = if m1.is_temporal() && m2.is_temporal() {
        verify_temporal_bisim(m1, m2, r, None)?
    } else {
        verify_prop_bisim(m1, m2, r)?
    };
    if let Some(v) = report.violation {
        return Err(Error::Precondition(format!("relation is not a bisimulation: {v}")));
    }
    for phi in probe {
        if extension(m1, phi)?.contains(w1) != extension(m2, phi)?.contains(w2) {
            return Ok(Some(phi.clone()));
        }
    }
    Ok(None)
}

/// On-disk relation format; `left` and `right` are model file paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub left: String,
    pub right: String,
    pub pairs: Vec<[World; 2]>,
}

impl RelationFile {
    pub fn new(left: impl Into<String>, right: impl Into<String>, r: &BisimRelation) -> Self {
        RelationFile {
            left: left.into(),
            right: right.into(),
            pairs: r.pairs().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn relation(&self) -> BisimRelation {
        BisimRelation::new(self.pairs.iter().map(|&[a, b]| (a, b)))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Loads the relation with both models, resolving model paths
    /// relative to the relation file's directory.
    pub fn load_with_models(path: impl AsRef<Path>) -> Result<(FiniteModel, FiniteModel, BisimRelation)> {
        let path = path.as_ref();
        let file = RelationFile::load(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        let left = FiniteModel::load(base.join(&file.left))?;
        let right = FiniteModel::load(base.join(&file.right))?;
        Ok((left, right, file.relation()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("relation file serializes")
    }
}
