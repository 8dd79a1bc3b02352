use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{FiniteModel, Frame};
use crate::error::{Error, Result};

/// Longest chain length. `Infinite` only arises for relations with cycles,
/// which `validate` also reports as not being partial orders.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, Depth::Finite(d) if d <= n)
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u64(*d as u64),
            Depth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LogicTag {
    ItlE,
    ItlP,
    /// Persistent with depth at most `n`; the report lists the least such `n`.
    ItlBd(usize),
    HtShape,
    LtlShape,
}

impl fmt::Display for LogicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicTag::ItlE => f.write_str("ITLe"),
            LogicTag::ItlP => f.write_str("ITLp"),
            LogicTag::ItlBd(n) => write!(f, "ITLbd({n})"),
            LogicTag::HtShape => f.write_str("HTshape"),
            LogicTag::LtlShape => f.write_str("LTLshape"),
        }
    }
}

impl Serialize for LogicTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FrameReport {
    pub worlds: usize,
    pub temporal: bool,
    pub is_partial_order: bool,
    pub monotone: bool,
    /// Always false for propositional models.
    pub forward_confluent: bool,
    /// Always false for propositional models.
    pub backward_confluent: bool,
    pub depth: Depth,
    /// Every generated subframe has a greatest world.
    pub topwidth1: bool,
    pub logic_tags: BTreeSet<LogicTag>,
}

/// Model classes that can be enumerated and searched.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LogicClass {
    Int,
    Kc,
    Bd(usize),
    /// The two-world chain only.
    Ht,
    ItlE,
    ItlP,
    ItlBd(usize),
}

impl LogicClass {
    pub fn is_temporal(self) -> bool {
        matches!(self, LogicClass::ItlE | LogicClass::ItlP | LogicClass::ItlBd(_))
    }

    /// Whether a frame with this report belongs to the class. Monotonicity
    /// of the valuation is not part of the frame condition.
    pub fn admits(self, r: &FrameReport) -> bool {
        if !r.is_partial_order {
            return false;
        }
        match self {
            LogicClass::Int => !r.temporal,
            LogicClass::Kc => !r.temporal && r.topwidth1,
            LogicClass::Bd(n) => !r.temporal && r.depth.at_most(n),
            LogicClass::Ht => !r.temporal && r.logic_tags.contains(&LogicTag::HtShape),
            LogicClass::ItlE => r.temporal && r.forward_confluent,
            LogicClass::ItlP => r.temporal && r.forward_confluent && r.backward_confluent,
            LogicClass::ItlBd(n) => {
                r.temporal && r.forward_confluent && r.backward_confluent && r.depth.at_most(n)
            }
        }
    }
}

impl fmt::Display for LogicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicClass::Int => f.write_str("INT"),
            LogicClass::Kc => f.write_str("KC"),
            LogicClass::Bd(n) => write!(f, "BD({n})"),
            LogicClass::Ht => f.write_str("HT"),
            LogicClass::ItlE => f.write_str("ITLe"),
            LogicClass::ItlP => f.write_str("ITLp"),
            LogicClass::ItlBd(n) => write!(f, "ITLbd({n})"),
        }
    }
}

/// Splits `NAME(n)` or `NAMEn` into the name and the index.
pub(crate) fn split_indexed(s: &str) -> (&str, Option<&str>) {
    if let Some(open) = s.find('(') {
        if let Some(inner) = s[open + 1..].strip_suffix(')') {
            return (&s[..open], Some(inner));
        }
    }
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if cut < s.len() {
        (&s[..cut], Some(&s[cut..]))
    } else {
        (s, None)
    }
}

pub(crate) fn parse_index(name: &str, idx: Option<&str>) -> Result<usize> {
    let raw = idx.ok_or_else(|| Error::InvalidArgument(format!("`{name}` needs a depth index")))?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(Error::InvalidArgument(format!("bad depth index `{raw}` for `{name}`"))),
    }
}

impl FromStr for LogicClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, idx) = split_indexed(s.trim());
        let lower = name.to_ascii_lowercase();
        let plain = |c: LogicClass| match idx {
            None => Ok(c),
            Some(_) => Err(Error::InvalidArgument(format!("`{name}` takes no index"))),
        };
        match lower.as_str() {
            "int" => plain(LogicClass::Int),
            "kc" => plain(LogicClass::Kc),
            "ht" => plain(LogicClass::Ht),
            "itle" => plain(LogicClass::ItlE),
            "itlp" => plain(LogicClass::ItlP),
            "ltl" => plain(LogicClass::ItlBd(1)),
            "bd" => Ok(LogicClass::Bd(parse_index(name, idx)?)),
            "itlbd" => Ok(LogicClass::ItlBd(parse_index(name, idx)?)),
            _ => Err(Error::InvalidArgument(format!("unknown logic `{s}`"))),
        }
    }
}

/// Height of every world (longest chain starting there), or `None` when the
/// strict relation has a cycle.
pub(crate) fn depths(f: &Frame) -> Option<Vec<usize>> {
    let n = f.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut height = vec![0usize; n];
    fn visit(f: &Frame, w: usize, state: &mut [u8], height: &mut [usize]) -> bool {
        state[w] = 1;
        let mut best = 0;
        for v in f.strict_up(w).iter() {
            match state[v] {
                1 => return false,
                0 => {
                    if !visit(f, v, state, height) {
                        return false;
                    }
                }
                _ => {}
            }
            best = best.max(height[v]);
        }
        height[w] = best + 1;
        state[w] = 2;
        true
    }
    for w in 0..n {
        if state[w] == 0 && !visit(f, w, &mut state, &mut height) {
            return None;
        }
    }
    Some(height)
}

pub(crate) fn is_partial_order(f: &Frame) -> bool {
    let n = f.len();
    (0..n).all(|w| {
        f.up(w).contains(w)
            && f.up(w).iter().all(|v| f.up(v).is_subset(f.up(w)))
            && f.strict_up(w).iter().all(|v| !f.up(v).contains(w))
    })
}

/// `w ≼ v ⇒ S(w) ≼ S(v)`
pub(crate) fn forward_confluent(f: &Frame) -> bool {
    match f.succ() {
        Some(s) => f.worlds().all(|w| f.up(w).iter().all(|v| f.leq(s[w], s[v]))),
        None => false,
    }
}

/// `S(w) ≼ u ⇒ ∃t ≽ w. S(t) = u`
pub(crate) fn backward_confluent(f: &Frame) -> bool {
    match f.succ() {
        Some(s) => f.worlds().all(|w| {
            let images: crate::sets::WorldSet = f.up(w).iter().map(|t| s[t]).collect();
            f.up(s[w]).is_subset(images)
        }),
        None => false,
    }
}

pub(crate) fn topwidth1(f: &Frame) -> bool {
    f.worlds().all(|w| f.maximal_above(w).len() == 1)
}

/// Frame-level report; `monotone` is vacuously true.
pub(crate) fn frame_report(f: &Frame) -> FrameReport {
    let is_partial_order = is_partial_order(f);
    let depth = match depths(f) {
        Some(h) => Depth::Finite(h.into_iter().max().unwrap_or(0)),
        None => Depth::Infinite,
    };
    let forward_confluent = forward_confluent(f);
    let backward_confluent = backward_confluent(f);
    let temporal = f.is_temporal();
    let mut logic_tags = BTreeSet::new();
    if is_partial_order {
        if temporal && forward_confluent {
            logic_tags.insert(LogicTag::ItlE);
            if backward_confluent {
                logic_tags.insert(LogicTag::ItlP);
                if let Depth::Finite(d) = depth {
                    logic_tags.insert(LogicTag::ItlBd(d));
                    if d == 1 {
                        logic_tags.insert(LogicTag::LtlShape);
                    }
                }
            }
        }
        if f.len() == 2 && depth == Depth::Finite(2) {
            logic_tags.insert(LogicTag::HtShape);
        }
    }
    FrameReport {
        worlds: f.len(),
        temporal,
        is_partial_order,
        monotone: true,
        forward_confluent,
        backward_confluent,
        depth,
        topwidth1: is_partial_order && topwidth1(f),
        logic_tags,
    }
}

pub(crate) fn report(m: &FiniteModel) -> FrameReport {
    FrameReport {
        monotone: m.is_monotone(),
        ..frame_report(m.frame())
    }
}
