//! Reference evaluators written directly from the satisfaction clauses,
//! with explicit quantifiers instead of fixpoints or bitmasks.

#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tel_core::{Alphabet, AtomSet, FiniteModel, Formula, ThtLasso};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn atom_index(a: &Alphabet, phi: &Formula) -> usize {
    let Formula::Atom(x) = phi else { unreachable!() };
    a.index_of(x).expect("atom in alphabet")
}

/// Instant `i` of a lasso folded into its stored positions.
pub fn pos(prefix: usize, loop_len: usize, i: usize) -> usize {
    if i < prefix {
        i
    } else {
        prefix + (i - prefix) % loop_len
    }
}

/// Classical LTL over the `there` trace of a lasso.
pub fn ltl(t: &ThtLasso, i: usize, phi: &Formula) -> bool {
    let n = t.prefix() + t.loop_len();
    let state = |k: usize| t.there()[pos(t.prefix(), t.loop_len(), k)];
    match phi {
        Formula::Bot => false,
        Formula::Atom(_) => state(i).contains(atom_index(t.alphabet(), phi)),
        Formula::And(l, r) => ltl(t, i, l) && ltl(t, i, r),
        Formula::Or(l, r) => ltl(t, i, l) || ltl(t, i, r),
        Formula::Implies(l, r) => !ltl(t, i, l) || ltl(t, i, r),
        Formula::Next(b) => ltl(t, i + 1, b),
        // after n steps every state has been seen
        Formula::Until(l, r) => (i..i + n).any(|k| ltl(t, k, r) && (i..k).all(|j| ltl(t, j, l))),
        Formula::Release(l, r) => (i..i + n).all(|k| ltl(t, k, r) || (i..k).any(|j| ltl(t, j, l))),
    }
}

/// THT at instant `i`; `there` selects the there layer.
pub fn tht(t: &ThtLasso, there: bool, i: usize, phi: &Formula) -> bool {
    let n = t.prefix() + t.loop_len();
    let p = pos(t.prefix(), t.loop_len(), i);
    match phi {
        Formula::Bot => false,
        Formula::Atom(_) => {
            let s = if there { t.there()[p] } else { t.here()[p] };
            s.contains(atom_index(t.alphabet(), phi))
        }
        Formula::And(l, r) => tht(t, there, i, l) && tht(t, there, i, r),
        Formula::Or(l, r) => tht(t, there, i, l) || tht(t, there, i, r),
        Formula::Implies(l, r) => {
            let classical = !tht(t, true, i, l) || tht(t, true, i, r);
            if there {
                classical
            } else {
                classical && (!tht(t, false, i, l) || tht(t, false, i, r))
            }
        }
        Formula::Next(b) => tht(t, there, i + 1, b),
        Formula::Until(l, r) => (i..i + n).any(|k| tht(t, there, k, r) && (i..k).all(|j| tht(t, there, j, l))),
        Formula::Release(l, r) => (i..i + n).all(|k| tht(t, there, k, r) || (i..k).any(|j| tht(t, there, j, l))),
    }
}

/// Here-and-there on a pair `h ⊆ t`.
pub fn ht(a: &Alphabet, h: AtomSet, t: AtomSet, there: bool, phi: &Formula) -> bool {
    match phi {
        Formula::Bot => false,
        Formula::Atom(_) => (if there { t } else { h }).contains(atom_index(a, phi)),
        Formula::And(l, r) => ht(a, h, t, there, l) && ht(a, h, t, there, r),
        Formula::Or(l, r) => ht(a, h, t, there, l) || ht(a, h, t, there, r),
        Formula::Implies(l, r) => {
            let up = !ht(a, h, t, true, l) || ht(a, h, t, true, r);
            up && (there || !ht(a, h, t, false, l) || ht(a, h, t, false, r))
        }
        _ => panic!("temporal formula in HT"),
    }
}

/// Equilibrium models by brute force over every pair `(h, t)`.
pub fn ht_equilibria(a: &Alphabet, gamma: &[Formula]) -> Vec<AtomSet> {
    let all = 1u64 << a.len();
    let models = |h: u64, t: u64| gamma.iter().all(|g| ht(a, AtomSet(h), AtomSet(t), false, g));
    (0..all)
        .filter(|&t| models(t, t) && !(0..all).any(|h| h & t == h && h != t && models(h, t)))
        .map(AtomSet)
        .collect()
}

/// Intuitionistic (temporal) Kripke satisfaction at `w`.
pub fn kripke(m: &FiniteModel, w: usize, phi: &Formula) -> bool {
    let f = m.frame();
    let n = m.len();
    let step = |w: usize| f.succ().expect("temporal model")[w];
    let iter = |w: usize, k: usize| (0..k).fold(w, |x, _| step(x));
    match phi {
        Formula::Bot => false,
        Formula::Atom(_) => m.val(w).contains(atom_index(m.alphabet(), phi)),
        Formula::And(l, r) => kripke(m, w, l) && kripke(m, w, r),
        Formula::Or(l, r) => kripke(m, w, l) || kripke(m, w, r),
        Formula::Implies(l, r) => (0..n).filter(|&v| f.leq(w, v)).all(|v| !kripke(m, v, l) || kripke(m, v, r)),
        Formula::Next(b) => kripke(m, step(w), b),
        Formula::Until(l, r) => (0..n).any(|k| kripke(m, iter(w, k), r) && (0..k).all(|j| kripke(m, iter(w, j), l))),
        Formula::Release(l, r) => (0..n).all(|k| kripke(m, iter(w, k), r) || (0..k).any(|j| kripke(m, iter(w, j), l))),
    }
}

/// Formulas over `atoms` with derived forms, for shrinking tests.
pub fn formula_strategy(atoms: &'static [&'static str], depth: u32, temporal: bool) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bot),
        1 => Just(Formula::top()),
        6 => prop::sample::select(atoms).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        let mut ops = vec![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
            inner.clone().prop_map(Formula::not).boxed(),
        ];
        if temporal {
            ops.extend([
                inner.clone().prop_map(Formula::next).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)).boxed(),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::release(a, b)).boxed(),
                inner.clone().prop_map(Formula::always).boxed(),
                inner.clone().prop_map(Formula::eventually).boxed(),
            ]);
        }
        prop::strategy::Union::new(ops)
    })
    .boxed()
}
