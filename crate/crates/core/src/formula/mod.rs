//! Abstract syntax for the propositional and temporal languages.
//!
//! Only the core connectives are represented. Negation, truth, the
//! biconditional, "always" and "eventually" are expanded by the smart
//! constructors below and never appear as nodes of their own.

mod axioms;
mod parser;
mod print;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use axioms::{bd_axiom, hosoi_axiom, weak_em_instances};
pub use parser::parse;

/// An atom name: `[a-z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self> {
        if !is_atom_name(name) {
            return Err(Error::InvalidArgument(format!("`{name}` is not a valid atom name")));
        }
        Ok(Atom(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "o"
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Atom::new(&s).map_err(serde::de::Error::custom)
    }
}

/// Core-form formula tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(Atom),
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Atom constructor. Panics on a malformed name; use [`Atom::new`] for
    /// untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("malformed atom name"))
    }

    pub fn bot() -> Formula {
        Formula::Bot
    }

    pub fn top() -> Formula {
        Formula::implies(Formula::Bot, Formula::Bot)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn not(body: Formula) -> Formula {
        Formula::implies(body, Formula::Bot)
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    pub fn next(body: Formula) -> Formula {
        Formula::Next(Box::new(body))
    }

    /// `○^n body`.
    pub fn next_n(n: usize, body: Formula) -> Formula {
        (0..n).fold(body, |acc, _| Formula::next(acc))
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Until(Box::new(lhs), Box::new(rhs))
    }

    pub fn release(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Release(Box::new(lhs), Box::new(rhs))
    }

    /// `□φ := ⊥ R φ`
    pub fn always(body: Formula) -> Formula {
        Formula::release(Formula::Bot, body)
    }

    /// `◇φ := ⊤ U φ`
    pub fn eventually(body: Formula) -> Formula {
        Formula::until(Formula::top(), body)
    }

    /// Left-nested disjunction of a non-empty list; `⊥` for an empty one.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Left-nested conjunction; `⊤` for an empty list.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::top)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(l, r) if **l == Formula::Bot && **r == Formula::Bot)
    }

    /// True if the formula uses `○`, `U` or `R`.
    pub fn is_temporal(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Bot => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_temporal() || r.is_temporal()
            }
            Formula::Next(_) | Formula::Until(..) | Formula::Release(..) => true,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Bot => {}
            Formula::Next(b) => b.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Height of the tree; atoms and `⊥` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 0,
            Formula::Next(b) => 1 + b.depth(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 1,
            Formula::Next(b) => 1 + b.size(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Bot => vec![],
            Formula::Next(b) => vec![b],
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Until(l, r)
            | Formula::Release(l, r) => vec![l, r],
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

/// Homomorphic replacement of atoms. Atoms outside the map are kept.
pub fn substitute(phi: &Formula, s: &BTreeMap<Atom, Formula>) -> Formula {
    let rec = |f: &Formula| Box::new(substitute(f, s));
    match phi {
        Formula::Atom(a) => s.get(a).cloned().unwrap_or_else(|| phi.clone()),
        Formula::Bot => Formula::Bot,
        Formula::And(l, r) => Formula::And(rec(l), rec(r)),
        Formula::Or(l, r) => Formula::Or(rec(l), rec(r)),
        Formula::Implies(l, r) => Formula::Implies(rec(l), rec(r)),
        Formula::Next(b) => Formula::Next(rec(b)),
        Formula::Until(l, r) => Formula::Until(rec(l), rec(r)),
        Formula::Release(l, r) => Formula::Release(rec(l), rec(r)),
    }
}

/// All subformulas in post-order with duplicates removed (first occurrence
/// wins), so probe sets are reproducible.
pub fn closure(phi: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    closure_into(phi, &mut out, &mut seen);
    out
}

/// Closure of a whole theory, in theory order.
pub fn closure_all<'a>(theory: impl IntoIterator<Item = &'a Formula>) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for phi in theory {
        closure_into(phi, &mut out, &mut seen);
    }
    out
}

fn closure_into(phi: &Formula, out: &mut Vec<Formula>, seen: &mut HashSet<Formula>) {
    for child in phi.children() {
        closure_into(child, out, seen);
    }
    if seen.insert(phi.clone()) {
        out.push(phi.clone());
    }
}

/// A finite, ordered list of distinct atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Alphabet(Vec<Atom>);

/// Atom sets are stored as bitmasks over alphabet positions.
pub const MAX_ATOMS: usize = 64;

impl Alphabet {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::Capacity(format!(
                "alphabet has {} atoms, at most {MAX_ATOMS} are supported",
                atoms.len()
            )));
        }
        let mut seen = HashSet::new();
        for a in &atoms {
            if !seen.insert(a) {
                return Err(Error::InvalidAlphabet(format!("duplicate atom `{a}`")));
            }
        }
        Ok(Alphabet(atoms))
    }

    pub fn from_names<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let atoms = names
            .into_iter()
            .map(|n| Atom::new(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(atoms)
    }

    /// Sorted atoms of a theory.
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Alphabet {
        let mut set = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut set);
        }
        Alphabet(set.into_iter().collect())
    }

    /// This alphabet followed by the atoms of `other` it does not contain.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut atoms = self.0.clone();
        for a in &other.0 {
            if !atoms.contains(a) {
                atoms.push(a.clone());
            }
        }
        Alphabet::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.0.iter().position(|a| a == atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    /// Checks that every atom of `phi` is declared.
    pub fn check(&self, phi: &Formula) -> Result<()> {
        for a in phi.atoms() {
            if !self.contains(&a) {
                return Err(Error::UnknownAtom(a.to_string()));
            }
        }
        Ok(())
    }
}

/// `○^offset atom`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TemporalAtom {
    pub atom: Atom,
    pub offset: usize,
}

impl TemporalAtom {
    pub fn to_formula(&self) -> Formula {
        Formula::next_n(self.offset, Formula::Atom(self.atom.clone()))
    }
}

impl fmt::Display for TemporalAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o^{} {}", self.offset, self.atom)
    }
}

/// All `○^i p` with `i < horizon` and `p` in the alphabet, ordered by
/// offset and then by alphabet position.
pub fn temporal_atoms(alphabet: &Alphabet, horizon: usize) -> Vec<TemporalAtom> {
    (0..horizon)
        .flat_map(|offset| {
            alphabet.atoms().iter().map(move |atom| TemporalAtom {
                atom: atom.clone(),
                offset,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn substitution_examples() {
        let mut s = BTreeMap::new();
        s.insert(Atom::new("p").unwrap(), Formula::and(q(), r()));
        let phi = Formula::or(p(), Formula::not(p()));
        let qr = Formula::and(q(), r());
        assert_eq!(substitute(&phi, &s), Formula::or(qr.clone(), Formula::not(qr)));

        assert_eq!(substitute(&Formula::Bot, &s), Formula::Bot);

        let mut s2 = BTreeMap::new();
        s2.insert(Atom::new("p").unwrap(), Formula::eventually(q()));
        assert_eq!(
            substitute(&Formula::next(p()), &s2),
            Formula::next(Formula::eventually(q()))
        );
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&Formula::and(p(), q())), vec![p(), q(), Formula::and(p(), q())]);
        assert_eq!(
            closure(&Formula::not(p())),
            vec![p(), Formula::Bot, Formula::not(p())]
        );
        assert_eq!(
            closure(&Formula::until(p(), q())),
            vec![p(), q(), Formula::until(p(), q())]
        );
    }

    #[test]
    fn closure_drops_duplicates() {
        let phi = Formula::and(p(), p());
        assert_eq!(closure(&phi), vec![p(), phi.clone()]);
    }

    #[test]
    fn temporal_atom_examples() {
        let a = Alphabet::from_names(["p"]).unwrap();
        let got = temporal_atoms(&a, 2);
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].offset, 0);
        assert_eq!(got[1].offset, 1);
        assert_eq!(got[1].to_formula(), Formula::next(p()));

        let ab = Alphabet::from_names(["p", "q"]).unwrap();
        assert!(temporal_atoms(&ab, 0).is_empty());
        assert_eq!(temporal_atoms(&ab, 3).len(), 6);
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(matches!(
            Alphabet::from_names(["p", "q", "p"]),
            Err(Error::InvalidAlphabet(_))
        ));
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("p_1").is_ok());
        assert!(Atom::new("on").is_ok());
        assert!(Atom::new("o").is_err());
        assert!(Atom::new("P").is_err());
        assert!(Atom::new("1p").is_err());
    }

    #[test]
    fn derived_forms_are_core() {
        assert_eq!(Formula::always(p()), Formula::release(Formula::Bot, p()));
        assert_eq!(Formula::eventually(p()), Formula::until(Formula::top(), p()));
        assert!(Formula::top().is_top());
    }
}
