//! Exhaustive enumeration of small frames and models.
//!
//! Orders are generated naturally labelled (`i ≼ j ⇒ i ≤ j`), which reaches
//! every finite partial order up to isomorphism. For up to
//! [`CANON_LIMIT`] worlds frames are further deduplicated by their
//! lexicographically least relabelling. Valuations are never reduced.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::classes::frame_report;
use super::{FiniteModel, Frame, LogicClass, World};
use crate::error::{Error, Result};
use crate::formula::Alphabet;
use crate::sets::{AtomSet, WorldSet};

/// Frames with at most this many worlds are reduced up to isomorphism.
pub const CANON_LIMIT: usize = 6;

/// Upper bound on raw (order, succ) candidates visited per call.
pub const FRAME_BUDGET: u128 = 20_000_000;

/// All strict-predecessor sets per world of every naturally labelled
/// partial order on `n` worlds, as up-set vectors.
fn natural_orders(n: usize) -> Vec<Vec<WorldSet>> {
    fn extend(k: usize, n: usize, up: &mut Vec<WorldSet>, out: &mut Vec<Vec<WorldSet>>) {
        if k == n {
            out.push(up.clone());
            return;
        }
        for bits in 0..(1u64 << k) {
            let below = WorldSet(bits);
            // `below` must be down-closed among 0..k.
            let closed = (0..k).all(|i| {
                !up[i].iter().any(|j| j < k && below.contains(j)) || below.contains(i)
            });
            if !closed {
                continue;
            }
            let saved: Vec<WorldSet> = up.clone();
            for i in below.iter() {
                up[i].insert(k);
            }
            up.push(WorldSet::singleton(k));
            extend(k + 1, n, up, out);
            *up = saved;
        }
    }
    let mut out = Vec::new();
    extend(0, n, &mut Vec::new(), &mut out);
    out
}

/// Successor functions on a fixed order that satisfy forward confluence,
/// built by backtracking so that violating prefixes are cut early.
fn forward_confluent_succs(up: &[WorldSet]) -> Vec<Vec<World>> {
    let n = up.len();
    let leq = |a: usize, b: usize| up[a].contains(b);
    let mut out = Vec::new();
    let mut s = vec![0usize; n];
    fn go(
        w: usize,
        n: usize,
        s: &mut Vec<usize>,
        up: &[WorldSet],
        leq: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if w == n {
            out.push(s.clone());
            return;
        }
        for x in 0..n {
            s[w] = x;
            let ok = (0..w).all(|v| {
                (!up[v].contains(w) || leq(s[v], x)) && (!up[w].contains(v) || leq(x, s[v]))
            });
            if ok {
                go(w + 1, n, s, up, leq, out);
            }
        }
    }
    go(0, n, &mut s, up, &leq, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Least relabelled encoding; `perm[old] = new`.
fn canonical_code(f: &Frame, perms: &[Vec<usize>]) -> Vec<u64> {
    let n = f.len();
    let mut best: Option<Vec<u64>> = None;
    let mut code = vec![0u64; if f.is_temporal() { 2 * n } else { n }];
    for perm in perms {
        for old in 0..n {
            let mapped: WorldSet = f.up(old).iter().map(|v| perm[v]).collect();
            code[perm[old]] = mapped.0;
            if let Some(s) = f.succ() {
                code[n + perm[old]] = perm[s[old]] as u64;
            }
        }
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code.clone());
        }
    }
    best.unwrap_or_default()
}

fn raw_candidates(class: LogicClass, max_worlds: usize) -> u128 {
    let mut total: u128 = 0;
    for n in 1..=max_worlds {
        // 2^(n(n-1)/2) bounds the naturally labelled orders.
        let orders = 1u128.checked_shl((n * (n - 1) / 2) as u32).unwrap_or(u128::MAX);
        let succs = if class.is_temporal() {
            (n as u128).saturating_pow(n as u32)
        } else {
            1
        };
        total = total.saturating_add(orders.saturating_mul(succs));
    }
    total
}

/// Every frame of the class with `1..=max_worlds` worlds, ordered by size
/// and then by generation order.
pub fn enumerate_frames(class: LogicClass, max_worlds: usize) -> Result<Vec<Frame>> {
    if max_worlds == 0 {
        return Err(Error::InvalidArgument("max_worlds must be at least 1".into()));
    }
    let needed = raw_candidates(class, max_worlds);
    if needed > FRAME_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: FRAME_BUDGET,
        });
    }
    let mut frames = Vec::new();
    for n in 1..=max_worlds {
        if class == LogicClass::Ht && n != 2 {
            continue;
        }
        let perms = if n <= CANON_LIMIT { permutations(n) } else { Vec::new() };
        let candidates: Vec<Frame> = natural_orders(n)
            .into_par_iter()
            .flat_map_iter(|up| {
                let succs: Vec<Option<Vec<World>>> = if class.is_temporal() {
                    forward_confluent_succs(&up).into_iter().map(Some).collect()
                } else {
                    vec![None]
                };
                succs.into_iter().filter_map(move |s| {
                    let f = Frame::from_up_sets(up.clone(), s).ok()?;
                    class.admits(&frame_report(&f)).then_some(f)
                })
            })
            .collect();
        if perms.is_empty() {
            frames.extend(candidates);
        } else {
            let codes: Vec<Vec<u64>> = candidates
                .par_iter()
                .map(|f| canonical_code(f, &perms))
                .collect();
            let mut seen = HashSet::new();
            for (f, c) in candidates.into_iter().zip(codes) {
                if seen.insert(c) {
                    frames.push(f);
                }
            }
        }
    }
    Ok(frames)
}

/// A materialized search space: frames of a class plus all monotone
/// valuations over an alphabet.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    pub class: LogicClass,
    pub alphabet: Alphabet,
    pub max_worlds: usize,
    frames: Vec<(Arc<Frame>, Vec<WorldSet>)>,
}

impl ModelSpace {
    pub fn from_frames(class: LogicClass, alphabet: Alphabet, max_worlds: usize, frames: Vec<Frame>) -> Self {
        let frames = frames
            .into_iter()
            .map(|f| {
                let ups = f.upsets();
                (Arc::new(f), ups)
            })
            .collect();
        ModelSpace {
            class,
            alphabet,
            max_worlds,
            frames,
        }
    }

    pub fn frames(&self) -> impl Iterator<Item = &Arc<Frame>> {
        self.frames.iter().map(|(f, _)| f)
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    /// Number of models, saturating.
    pub fn model_count(&self) -> u128 {
        let k = self.alphabet.len() as u32;
        self.frames
            .iter()
            .map(|(_, ups)| (ups.len() as u128).saturating_pow(k))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// Models over frame `i`, in valuation-counter order.
    pub fn models_of(&self, i: usize) -> impl Iterator<Item = FiniteModel> + '_ {
        let (frame, ups) = &self.frames[i];
        let k = self.alphabet.len();
        let u = ups.len();
        let mut digits = vec![0usize; k];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut val = vec![AtomSet::EMPTY; frame.len()];
            for (atom, &d) in digits.iter().enumerate() {
                for w in ups[d].iter() {
                    val[w].insert(atom);
                }
            }
            // advance the mixed-radix counter
            done = true;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < u {
                    done = false;
                    break;
                }
                *d = 0;
            }
            Some(FiniteModel {
                frame: frame.clone(),
                alphabet: self.alphabet.clone(),
                val,
            })
        })
    }

    pub fn models(&self) -> impl Iterator<Item = FiniteModel> + '_ {
        (0..self.frames.len()).flat_map(move |i| self.models_of(i))
    }

    /// First result in enumeration order, searching frames in parallel.
    pub fn find_first<T, F>(&self, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(&FiniteModel) -> Option<T> + Sync,
    {
        (0..self.frames.len())
            .into_par_iter()
            .find_map_first(|i| self.models_of(i).find_map(|m| f(&m)))
    }

    /// Whether `f` holds on every model, searching in parallel.
    pub fn all<F>(&self, f: F) -> bool
    where
        F: Fn(&FiniteModel) -> bool + Sync,
    {
        self.find_first(|m| (!f(m)).then_some(())).is_none()
    }
}

/// All models of the class with at most `max_worlds` worlds and monotone
/// valuations over `alphabet`.
pub fn enumerate_models(class: LogicClass, alphabet: &Alphabet, max_worlds: usize) -> Result<ModelSpace> {
    let frames = enumerate_frames(class, max_worlds)?;
    Ok(ModelSpace::from_frames(class, alphabet.clone(), max_worlds, frames))
}
