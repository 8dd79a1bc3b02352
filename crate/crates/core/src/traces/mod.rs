//! Here-and-there and classical semantics over ultimately periodic traces.

mod json;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula};
use crate::kripke::{FiniteModel, Frame, World};
use crate::sets::{AtomSet, WorldSet};

pub use json::LassoFile;
pub use search::{
    enumerate_lassos, enumerate_total_lassos, ltl_model_search, models_of, search_lassos, tht_bounded_entails,
    tht_consistent_bounded, tht_entails_over, LassoShapeSet, TRACE_BUDGET,
};

/// Positions are stored as bits of a `u64`.
pub const MAX_POSITIONS: usize = 64;

/// A lasso-shaped THT trace: positions `0..prefix+loop_len`, after which
/// instants wrap back to `prefix`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ThtLasso {
    alphabet: Alphabet,
    prefix: usize,
    loop_len: usize,
    h: Vec<AtomSet>,
    t: Vec<AtomSet>,
}

/// Here (0) or there (1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Layer {
    Here,
    There,
}

impl Layer {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            0 => Ok(Layer::Here),
            1 => Ok(Layer::There),
            _ => Err(Error::InvalidArgument(format!("layer must be 0 or 1, got {i}"))),
        }
    }
}

impl ThtLasso {
    pub fn new(alphabet: Alphabet, prefix: usize, loop_len: usize, h: Vec<AtomSet>, t: Vec<AtomSet>) -> Result<Self> {
        let len = prefix + loop_len;
        if loop_len == 0 {
            return Err(Error::InvalidLasso("loop length must be positive".into()));
        }
        if len > MAX_POSITIONS {
            return Err(Error::Capacity(format!(
                "lasso has {len} positions, at most {MAX_POSITIONS} are supported"
            )));
        }
        if h.len() != len || t.len() != len {
            return Err(Error::InvalidLasso(format!(
                "expected {len} states, got {} here and {} there",
                h.len(),
                t.len()
            )));
        }
        let declared = AtomSet::full(alphabet.len());
        for i in 0..len {
            if !t[i].is_subset(declared) {
                return Err(Error::InvalidLasso(format!("state {i} mentions an undeclared atom")));
            }
            if !h[i].is_subset(t[i]) {
                return Err(Error::InvalidLasso(format!("state {i}: here is not a subset of there")));
            }
        }
        Ok(ThtLasso {
            alphabet,
            prefix,
            loop_len,
            h,
            t,
        })
    }

    /// A total lasso with `H = T`.
    pub fn total(alphabet: Alphabet, prefix: usize, loop_len: usize, t: Vec<AtomSet>) -> Result<Self> {
        ThtLasso::new(alphabet, prefix, loop_len, t.clone(), t)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefix(&self) -> usize {
        self.prefix
    }

    pub fn loop_len(&self) -> usize {
        self.loop_len
    }

    /// `prefix + loop_len`
    pub fn len(&self) -> usize {
        self.prefix + self.loop_len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn here(&self) -> &[AtomSet] {
        &self.h
    }

    pub fn there(&self) -> &[AtomSet] {
        &self.t
    }

    /// State position of instant `i`.
    pub fn position(&self, i: usize) -> usize {
        if i < self.len() {
            i
        } else {
            self.prefix + (i - self.prefix) % self.loop_len
        }
    }

    /// `(H_i, T_i)` at any instant.
    pub fn state(&self, i: usize) -> (AtomSet, AtomSet) {
        let p = self.position(i);
        (self.h[p], self.t[p])
    }

    fn next_pos(&self, p: usize) -> usize {
        if p + 1 < self.len() {
            p + 1
        } else {
            self.prefix
        }
    }

    pub fn is_total(&self) -> bool {
        self.h == self.t
    }

    /// The total lasso on the T-trace.
    pub fn there_trace(&self) -> ThtLasso {
        ThtLasso {
            h: self.t.clone(),
            ..self.clone()
        }
    }

    /// Same trace over a larger alphabet.
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
        let remap = |v: &Vec<AtomSet>| -> Vec<AtomSet> {
            v.iter().map(|s| s.iter().map(|i| map[i]).collect()).collect()
        };
        ThtLasso::new(alphabet.clone(), self.prefix, self.loop_len, remap(&self.h), remap(&self.t))
    }

    /// The same trace presented with prefix `prefix ≥ self.prefix` and a loop
    /// length that is a multiple of `self.loop_len`.
    pub fn unroll(&self, prefix: usize, loop_len: usize) -> Result<Self> {
        if prefix < self.prefix || loop_len == 0 || loop_len % self.loop_len != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot present a ({}, {}) lasso as ({prefix}, {loop_len})",
                self.prefix, self.loop_len
            )));
        }
        let (h, t) = (0..prefix + loop_len).map(|i| self.state(i)).unzip();
        ThtLasso::new(self.alphabet.clone(), prefix, loop_len, h, t)
    }

    /// Shortest presentation: primitive loop, then the shortest prefix.
    pub fn canonical(&self) -> ThtLasso {
        let states: Vec<(AtomSet, AtomSet)> = (0..self.len()).map(|i| self.state(i)).collect();
        let lp = &states[self.prefix..];
        let period = (1..=self.loop_len)
            .find(|&d| self.loop_len % d == 0 && (0..self.loop_len).all(|i| lp[i] == lp[i % d]))
            .unwrap_or(self.loop_len);
        let mut prefix = self.prefix;
        let mut seq: Vec<(AtomSet, AtomSet)> = states[..prefix + period].to_vec();
        while prefix > 0 && seq[prefix - 1] == seq[prefix + period - 1] {
            seq.pop();
            prefix -= 1;
        }
        let (h, t) = seq.into_iter().unzip();
        ThtLasso {
            alphabet: self.alphabet.clone(),
            prefix,
            loop_len: period,
            h,
            t,
        }
    }

    /// The lasso as a temporal Kripke model: world `2i` is `(i, here)` and
    /// `2i + 1` is `(i, there)`.
    pub fn to_model(&self) -> Result<FiniteModel> {
        let n = self.len();
        if 2 * n > crate::kripke::MAX_WORLDS {
            return Err(Error::Capacity(format!(
                "a {n}-position lasso needs {} worlds",
                2 * n
            )));
        }
        let mut up = Vec::with_capacity(2 * n);
        let mut succ = Vec::with_capacity(2 * n);
        let mut val = Vec::with_capacity(2 * n);
        for p in 0..n {
            let next = self.next_pos(p);
            up.push(WorldSet::singleton(2 * p) | WorldSet::singleton(2 * p + 1));
            up.push(WorldSet::singleton(2 * p + 1));
            succ.push(2 * next);
            succ.push(2 * next + 1);
            val.push(self.h[p]);
            val.push(self.t[p]);
        }
        FiniteModel::new(Frame::from_up_sets(up, Some(succ))?, self.alphabet.clone(), val)
    }

    /// World of [`ThtLasso::to_model`] for an instant and layer.
    pub fn world_of(&self, instant: usize, layer: Layer) -> World {
        2 * self.position(instant) + usize::from(layer == Layer::There)
    }
}

impl fmt::Display for ThtLasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: AtomSet| {
            let names: Vec<String> = s.iter().map(|i| self.alphabet.atoms()[i].to_string()).collect();
            format!("{{{}}}", names.join(","))
        };
        for p in 0..self.len() {
            if p == self.prefix {
                f.write_str("(")?;
            }
            if self.h[p] == self.t[p] {
                write!(f, "{}", show(self.t[p]))?;
            } else {
                write!(f, "{}/{}", show(self.h[p]), show(self.t[p]))?;
            }
            if p + 1 < self.len() {
                f.write_str(" ")?;
            }
        }
        f.write_str(")^w")
    }
}

/// Extensions of a formula over lasso positions, per layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Ext {
    here: u64,
    there: u64,
}

struct TraceEval<'a> {
    lasso: &'a ThtLasso,
    all: u64,
}

impl TraceEval<'_> {
    fn pre(&self, x: u64) -> u64 {
        let mut out = 0;
        for p in 0..self.lasso.len() {
            if x >> self.lasso.next_pos(p) & 1 == 1 {
                out |= 1 << p;
            }
        }
        out
    }

    fn atom_bits(&self, states: &[AtomSet], i: usize) -> u64 {
        states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(i))
            .fold(0, |acc, (p, _)| acc | 1 << p)
    }

    fn lfp(&self, a: u64, b: u64) -> u64 {
        let mut x = 0;
        loop {
            let next = b | (a & self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }

    fn gfp(&self, a: u64, b: u64) -> u64 {
        let mut x = self.all;
        loop {
            let next = b & (a | self.pre(x));
            if next == x {
                return x;
            }
            x = next;
        }
    }

    fn eval(&self, phi: &Formula) -> Result<Ext> {
        Ok(match phi {
            Formula::Atom(a) => {
                let i = self
                    .lasso
                    .alphabet
                    .index_of(a)
                    .ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
                Ext {
                    here: self.atom_bits(&self.lasso.h, i),
                    there: self.atom_bits(&self.lasso.t, i),
                }
            }
            Formula::Bot => Ext { here: 0, there: 0 },
            Formula::And(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                Ext {
                    here: a.here & b.here,
                    there: a.there & b.there,
                }
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                Ext {
                    here: a.here | b.here,
                    there: a.there | b.there,
                }
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                let there = (!a.there | b.there) & self.all;
                Ext {
                    here: (!a.here | b.here) & there,
                    there,
                }
            }
            Formula::Next(body) => {
                let a = self.eval(body)?;
                Ext {
                    here: self.pre(a.here),
                    there: self.pre(a.there),
                }
            }
            Formula::Until(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                Ext {
                    here: self.lfp(a.here, b.here),
                    there: self.lfp(a.there, b.there),
                }
            }
            Formula::Release(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                Ext {
                    here: self.gfp(a.here, b.here),
                    there: self.gfp(a.there, b.there),
                }
            }
        })
    }
}

/// Positions where `phi` holds, as `(here, there)` bitmasks.
pub fn tht_extension(t: &ThtLasso, phi: &Formula) -> Result<(u64, u64)> {
    let ev = TraceEval {
        lasso: t,
        all: if t.len() == 64 { u64::MAX } else { (1u64 << t.len()) - 1 },
    };
    let e = ev.eval(phi)?;
    Ok((e.here, e.there))
}

pub fn tht_satisfies(t: &ThtLasso, instant: usize, layer: Layer, phi: &Formula) -> Result<bool> {
    let (here, there) = tht_extension(t, phi)?;
    let bits = if layer == Layer::Here { here } else { there };
    Ok(bits >> t.position(instant) & 1 == 1)
}

/// Positions satisfying all of `gamma` at layer 0.
pub fn tht_extension_all<'a>(t: &ThtLasso, gamma: impl IntoIterator<Item = &'a Formula>) -> Result<u64> {
    let mut acc = u64::MAX;
    for g in gamma {
        acc &= tht_extension(t, g)?.0;
    }
    Ok(acc)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn aligned(a: &ThtLasso, b: &ThtLasso) -> Result<usize> {
    if a.alphabet != b.alphabet {
        return Err(Error::InvalidArgument("lassos over different alphabets".into()));
    }
    Ok(a.prefix.max(b.prefix) + lcm(a.loop_len, b.loop_len))
}

/// Same there-trace and pointwise smaller here-trace. Both traces are
/// periodic with period `lcm(λa, λb)` from `max(ℓa, ℓb)` on, so comparing up
/// to that horizon covers every instant.
pub fn leq(a: &ThtLasso, b: &ThtLasso) -> Result<bool> {
    let horizon = aligned(a, b)?;
    Ok((0..horizon).all(|i| {
        let (ha, ta) = a.state(i);
        let (hb, tb) = b.state(i);
        ta == tb && ha.is_subset(hb)
    }))
}

pub fn lt(a: &ThtLasso, b: &ThtLasso) -> Result<bool> {
    let horizon = aligned(a, b)?;
    Ok(leq(a, b)? && (0..horizon).any(|i| a.state(i) != b.state(i)))
}

/// Whether both lassos denote the same infinite trace.
pub fn same_trace(a: &ThtLasso, b: &ThtLasso) -> Result<bool> {
    let horizon = aligned(a, b)?;
    Ok((0..horizon).all(|i| a.state(i) == b.state(i)))
}

pub fn is_total(t: &ThtLasso) -> bool {
    t.is_total()
}

#[cfg(test)]
mod tests;
