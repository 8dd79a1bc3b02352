//! Random formulas, lassos and models for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Alphabet, Formula};
use crate::kripke::FiniteModel;
use crate::sets::{AtomSet, WorldSet};
use crate::traces::ThtLasso;

/// Random formula of depth at most `depth` over the alphabet, using
/// temporal connectives only when `temporal` is set. Derived forms (`¬`,
/// `□`, `◇`) are produced with the same weight as primitive ones.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, depth: usize, temporal: bool) -> Formula {
    let leaf = |rng: &mut R| {
        if alphabet.is_empty() || rng.gen_ratio(1, 8) {
            Formula::Bot
        } else {
            Formula::Atom(alphabet.atoms().choose(rng).expect("non-empty").clone())
        }
    };
    if depth == 0 || rng.gen_ratio(1, 5) {
        return leaf(rng);
    }
    let ops = if temporal { 10 } else { 4 };
    let sub = |rng: &mut R| formula(rng, alphabet, depth - 1, temporal);
    match rng.gen_range(0..ops) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::implies(sub(rng), sub(rng)),
        3 => Formula::not(sub(rng)),
        4 | 5 => Formula::next(sub(rng)),
        6 => Formula::until(sub(rng), sub(rng)),
        7 => Formula::release(sub(rng), sub(rng)),
        8 => Formula::always(sub(rng)),
        _ => Formula::eventually(sub(rng)),
    }
}

pub fn formulas<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, depth: usize, temporal: bool, n: usize) -> Vec<Formula> {
    (0..n).map(|_| formula(rng, alphabet, depth, temporal)).collect()
}

/// Random lasso with `ℓ ≤ max_prefix` and `1 ≤ λ ≤ max_loop`.
pub fn lasso<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_prefix: usize, max_loop: usize, total: bool) -> ThtLasso {
    let prefix = rng.gen_range(0..=max_prefix);
    let loop_len = rng.gen_range(1..=max_loop.max(1));
    let full = AtomSet::full(alphabet.len()).0;
    let mut h = Vec::new();
    let mut t = Vec::new();
    for _ in 0..prefix + loop_len {
        let there = AtomSet(rng.gen::<u64>() & full);
        let here = if total { there } else { AtomSet(rng.gen::<u64>() & there.0) };
        h.push(here);
        t.push(there);
    }
    ThtLasso::new(alphabet.clone(), prefix, loop_len, h, t).expect("generated lasso is well formed")
}

/// A monotone valuation on `m`'s frame drawn by picking one random upset
/// per atom.
pub fn revalue<R: Rng + ?Sized>(rng: &mut R, m: &FiniteModel, alphabet: &Alphabet) -> FiniteModel {
    let upsets = m.frame().upsets();
    let mut val = vec![AtomSet::EMPTY; m.len()];
    for a in 0..alphabet.len() {
        let s: WorldSet = *upsets.choose(rng).expect("the empty set is an upset");
        for w in s.iter() {
            val[w].insert(a);
        }
    }
    FiniteModel::new(m.frame_arc().clone(), alphabet.clone(), val).expect("upset valuations are monotone")
}
