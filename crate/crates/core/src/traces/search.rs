//! Exhaustive search over lassos of bounded shape.

use rayon::prelude::*;
use serde::Serialize;

use super::{tht_extension, ThtLasso};
use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula};
use crate::semantics::{Bounds, Outcome, Verdict, Witness};
use crate::sets::AtomSet;

/// Upper bound on lassos visited per search.
pub const TRACE_BUDGET: u128 = 50_000_000;

/// Lasso shapes `(prefix, loop)`, ordered by total length and then prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LassoShapeSet {
    shapes: Vec<(usize, usize)>,
}

impl LassoShapeSet {
    pub fn new(mut shapes: Vec<(usize, usize)>) -> Result<Self> {
        if shapes.is_empty() {
            return Err(Error::InvalidArgument("empty shape set".into()));
        }
        if let Some(&(l, _)) = shapes.iter().find(|s| s.1 == 0) {
            return Err(Error::InvalidArgument(format!(
                "shape with prefix {l} has loop length 0"
            )));
        }
        if let Some(&(l, k)) = shapes.iter().find(|s| s.0 + s.1 > super::MAX_POSITIONS) {
            return Err(Error::Capacity(format!("shape ({l}, {k}) is too long")));
        }
        shapes.sort_by_key(|&(l, k)| (l + k, l));
        shapes.dedup();
        Ok(LassoShapeSet { shapes })
    }

    pub fn single(prefix: usize, loop_len: usize) -> Result<Self> {
        LassoShapeSet::new(vec![(prefix, loop_len)])
    }

    /// Every `(ℓ, λ)` with `ℓ ≤ max_prefix` and `1 ≤ λ ≤ max_loop`.
    pub fn bounded(max_prefix: usize, max_loop: usize) -> Result<Self> {
        let shapes = (0..=max_prefix)
            .flat_map(|l| (1..=max_loop).map(move |k| (l, k)))
            .collect();
        LassoShapeSet::new(shapes)
    }

    /// Every shape with `ℓ + λ ≤ max_len`.
    pub fn up_to_length(max_len: usize) -> Result<Self> {
        let shapes = (1..=max_len)
            .flat_map(|len| (0..len).map(move |l| (l, len - l)))
            .collect();
        LassoShapeSet::new(shapes)
    }

    pub fn shapes(&self) -> &[(usize, usize)] {
        &self.shapes
    }

    pub fn max_prefix(&self) -> usize {
        self.shapes.iter().map(|s| s.0).max().unwrap_or(0)
    }

    pub fn max_loop(&self) -> usize {
        self.shapes.iter().map(|s| s.1).max().unwrap_or(1)
    }

    pub fn contains(&self, prefix: usize, loop_len: usize) -> bool {
        self.shapes.contains(&(prefix, loop_len))
    }

    /// Number of lassos over `atoms` atoms, saturating.
    pub fn count(&self, atoms: usize, total: bool) -> u128 {
        let base = per_state(atoms, total);
        self.shapes
            .iter()
            .map(|&(l, k)| base.saturating_pow((l + k) as u32))
            .fold(0u128, |a, b| a.saturating_add(b))
    }
}

fn per_state(atoms: usize, total: bool) -> u128 {
    if total {
        1u128.checked_shl(atoms as u32).unwrap_or(u128::MAX)
    } else {
        3u128.saturating_pow(atoms as u32)
    }
}

/// Decodes the `index`-th lasso of a shape. Each state is a digit; inside a
/// state each atom is a binary (total) or ternary digit: absent, there
/// only, both.
fn decode(alphabet: &Alphabet, shape: (usize, usize), total: bool, mut index: u128) -> ThtLasso {
    let k = alphabet.len();
    let len = shape.0 + shape.1;
    let mut h = vec![AtomSet::EMPTY; len];
    let mut t = vec![AtomSet::EMPTY; len];
    for p in 0..len {
        for a in 0..k {
            let d = if total {
                let d = index % 2;
                index /= 2;
                d * 2
            } else {
                let d = index % 3;
                index /= 3;
                d
            };
            if d >= 1 {
                t[p].insert(a);
            }
            if d == 2 {
                h[p].insert(a);
            }
        }
    }
    ThtLasso::new(alphabet.clone(), shape.0, shape.1, h, t).expect("decoded lasso is well formed")
}

fn check_budget(alphabet: &Alphabet, shapes: &LassoShapeSet, total: bool) -> Result<()> {
    let needed = shapes.count(alphabet.len(), total);
    if needed > TRACE_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: TRACE_BUDGET,
        });
    }
    Ok(())
}

/// All lassos of the shapes, in search order.
pub fn enumerate_lassos<'a>(
    alphabet: &'a Alphabet,
    shapes: &'a LassoShapeSet,
) -> Result<impl Iterator<Item = ThtLasso> + 'a> {
    enumerate(alphabet, shapes, false)
}

/// All total lassos of the shapes, in search order.
pub fn enumerate_total_lassos<'a>(
    alphabet: &'a Alphabet,
    shapes: &'a LassoShapeSet,
) -> Result<impl Iterator<Item = ThtLasso> + 'a> {
    enumerate(alphabet, shapes, true)
}

fn enumerate<'a>(
    alphabet: &'a Alphabet,
    shapes: &'a LassoShapeSet,
    total: bool,
) -> Result<impl Iterator<Item = ThtLasso> + 'a> {
    check_budget(alphabet, shapes, total)?;
    let base = per_state(alphabet.len(), total);
    Ok(shapes.shapes.iter().flat_map(move |&shape| {
        let count = base.pow((shape.0 + shape.1) as u32);
        (0..count).map(move |i| decode(alphabet, shape, total, i))
    }))
}

/// First lasso in search order for which `f` yields a value, searching each
/// shape in parallel.
pub fn search_lassos<T, F>(alphabet: &Alphabet, shapes: &LassoShapeSet, total: bool, f: F) -> Result<Option<T>>
where
    T: Send,
    F: Fn(ThtLasso) -> Result<Option<T>> + Sync,
{
    check_budget(alphabet, shapes, total)?;
    let base = per_state(alphabet.len(), total);
    for &shape in &shapes.shapes {
        let count = base.pow((shape.0 + shape.1) as u32) as u64;
        let found = (0..count)
            .into_par_iter()
            .find_map_first(|i| f(decode(alphabet, shape, total, i as u128)).transpose());
        if let Some(r) = found {
            return r.map(Some);
        }
    }
    Ok(None)
}

/// Every lasso of the shapes satisfying `gamma` at `(0, here)`, in search
/// order.
pub fn models_of(alphabet: &Alphabet, gamma: &[Formula], shapes: &LassoShapeSet, total: bool) -> Result<Vec<ThtLasso>> {
    for phi in gamma {
        alphabet.check(phi)?;
    }
    check_budget(alphabet, shapes, total)?;
    let base = per_state(alphabet.len(), total);
    let mut out = Vec::new();
    for &shape in &shapes.shapes {
        let count = base.pow((shape.0 + shape.1) as u32) as u64;
        let found: Vec<ThtLasso> = (0..count)
            .into_par_iter()
            .map(|i| {
                let lasso = decode(alphabet, shape, total, i as u128);
                for g in gamma {
                    if tht_extension(&lasso, g)?.0 & 1 == 0 {
                        return Ok(None);
                    }
                }
                Ok(Some(lasso))
            })
            .filter_map(|r: Result<Option<ThtLasso>>| r.transpose())
            .collect::<Result<_>>()?;
        out.extend(found);
    }
    Ok(out)
}

/// Searches for a lasso satisfying `gamma` at `(0, here)` and refuting some
/// member of `delta` there. Atoms are those of the formulas.
pub fn tht_bounded_entails(gamma: &[Formula], delta: &[Formula], shapes: &LassoShapeSet) -> Result<Verdict> {
    let alphabet = Alphabet::of_formulas(gamma.iter().chain(delta));
    tht_entails_over(&alphabet, gamma, delta, shapes)
}

/// [`tht_bounded_entails`] over a declared alphabet.
pub fn tht_entails_over(
    alphabet: &Alphabet,
    gamma: &[Formula],
    delta: &[Formula],
    shapes: &LassoShapeSet,
) -> Result<Verdict> {
    for phi in gamma.iter().chain(delta) {
        alphabet.check(phi)?;
    }
    let found = search_lassos(alphabet, shapes, false, |lasso| {
        for g in gamma {
            if tht_extension(&lasso, g)?.0 & 1 == 0 {
                return Ok(None);
            }
        }
        for d in delta {
            if tht_extension(&lasso, d)?.0 & 1 == 0 {
                return Ok(Some((lasso, d.clone())));
            }
        }
        Ok(None)
    })?;
    let bounds = Bounds::lassos("THT", alphabet, shapes, shapes.count(alphabet.len(), false));
    Ok(Verdict {
        outcome: match found {
            Some((lasso, failed)) => Outcome::Refuted {
                witness: Witness::Lasso { lasso, instant: 0 },
                failed,
            },
            None => Outcome::NoCounterexampleUpToBound,
        },
        bounds,
    })
}

/// Model search phrased as entailment of `⊥`: a `Refuted` verdict carries a
/// lasso satisfying `gamma` at `(0, here)`, and
/// `NoCounterexampleUpToBound` means no model exists among the shapes.
pub fn tht_consistent_bounded(gamma: &[Formula], shapes: &LassoShapeSet) -> Result<Verdict> {
    tht_bounded_entails(gamma, &[Formula::Bot], shapes)
}

/// First total lasso satisfying `gamma` at instant 0.
pub fn ltl_model_search(gamma: &[Formula], alphabet: &Alphabet, shapes: &LassoShapeSet) -> Result<Option<ThtLasso>> {
    for phi in gamma {
        alphabet.check(phi)?;
    }
    search_lassos(alphabet, shapes, true, |lasso| {
        for g in gamma {
            if tht_extension(&lasso, g)?.0 & 1 == 0 {
                return Ok(None);
            }
        }
        Ok(Some(lasso))
    })
}
