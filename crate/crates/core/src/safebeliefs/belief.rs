use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Alphabet;
use crate::kripke::{atom_names, atom_set};
use crate::sets::AtomSet;
use crate::traces::ThtLasso;

/// An ultimately periodic set of atoms `○^i p`: instant `i` holds the
/// members at position `i` of a lasso pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemporalBeliefSet {
    alphabet: Alphabet,
    prefix: usize,
    loop_len: usize,
    members: Vec<AtomSet>,
}

impl TemporalBeliefSet {
    pub fn new(alphabet: Alphabet, prefix: usize, loop_len: usize, members: Vec<AtomSet>) -> Result<Self> {
        // validation is shared with lassos
        ThtLasso::total(alphabet.clone(), prefix, loop_len, members.clone())?;
        Ok(TemporalBeliefSet {
            alphabet,
            prefix,
            loop_len,
            members,
        })
    }

    /// Every `○^i p` with `p` at instant `i` of the total lasso.
    pub fn from_lasso(t: &ThtLasso) -> Result<Self> {
        if !t.is_total() {
            return Err(Error::InvalidArgument("belief sets correspond to total lassos only".into()));
        }
        TemporalBeliefSet::new(t.alphabet().clone(), t.prefix(), t.loop_len(), t.there().to_vec())
    }

    /// The total lasso whose instant `i` is `{p | ○^i p ∈ T}`.
    pub fn to_lasso(&self) -> ThtLasso {
        ThtLasso::total(self.alphabet.clone(), self.prefix, self.loop_len, self.members.clone())
            .expect("checked on construction")
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

    pub fn horizon(&self) -> usize {
        self.prefix + self.loop_len
    }

    pub fn members(&self) -> &[AtomSet] {
        &self.members
    }

    /// Atoms `p` with `○^i p ∈ T`.
    pub fn at(&self, i: usize) -> AtomSet {
        let pos = if i < self.prefix {
            i
        } else {
            self.prefix + (i - self.prefix) % self.loop_len
        };
        self.members[pos]
    }

    /// Whether `○^i p ∈ T` for the atom with index `atom`.
    pub fn contains(&self, i: usize, atom: usize) -> bool {
        self.at(i).contains(atom)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str::<BeliefFile>(text)?.into_belief_set()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&BeliefFile::from_belief_set(self)).expect("belief file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        TemporalBeliefSet::from_json_str(&std::fs::read_to_string(path)?)
    }
}

impl fmt::Display for TemporalBeliefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, s: AtomSet| {
            write!(f, "{{{}}}", atom_names(&self.alphabet, s).join(","))
        };
        for &s in &self.members[..self.prefix] {
            show(f, s)?;
            f.write_str(" ")?;
        }
        f.write_str("(")?;
        for (k, &s) in self.members[self.prefix..].iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            show(f, s)?;
        }
        f.write_str(")^w")
    }
}

impl Serialize for TemporalBeliefSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BeliefFile::from_belief_set(self).serialize(s)
    }
}

/// On-disk belief-set format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeliefFile {
    pub atoms: Vec<String>,
    pub prefix: usize,
    #[serde(rename = "loop")]
    pub loop_len: usize,
    #[serde(rename = "in")]
    pub members: Vec<Vec<String>>,
}

impl BeliefFile {
    pub fn into_belief_set(self) -> Result<TemporalBeliefSet> {
        let alphabet = Alphabet::from_names(&self.atoms)?;
        let members = self
            .members
            .iter()
            .map(|names| atom_set(&alphabet, names.iter().map(String::as_str)))
            .collect::<Result<Vec<_>>>()?;
        TemporalBeliefSet::new(alphabet, self.prefix, self.loop_len, members)
    }

    pub fn from_belief_set(t: &TemporalBeliefSet) -> Self {
        BeliefFile {
            atoms: t.alphabet.atoms().iter().map(|a| a.to_string()).collect(),
            prefix: t.prefix,
            loop_len: t.loop_len,
            members: t.members.iter().map(|&s| atom_names(&t.alphabet, s)).collect(),
        }
    }
}
