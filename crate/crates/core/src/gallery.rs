//! Small hand-built models used by tests, benchmarks and the CLI data files.
//!
//! World indices are documented per model; valuations are given as atom
//! names.

use crate::kripke::{FiniteModel, Frame, World};

fn model(atoms: &[&str], order: &[(World, World)], succ: Option<Vec<World>>, val: &[&[&str]]) -> FiniteModel {
    FiniteModel::build(atoms, order, succ, val).expect("gallery model is well formed")
}

/// `n`-world chain `0 ≼ 1 ≼ … ≼ n-1` with the empty alphabet.
pub fn chain(n: usize) -> FiniteModel {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteModel::bare(Frame::from_pairs(n, &pairs, None).expect("chain"))
}

/// The two-world here-and-there frame `0 ≼ 1`.
pub fn ht_frame() -> FiniteModel {
    chain(2)
}

/// `0 ≼ 1, 0 ≼ 2, 1 ≼ 3, 2 ≼ 3`
pub fn diamond() -> FiniteModel {
    FiniteModel::bare(Frame::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], None).expect("diamond"))
}

/// Root `0` below two maximal worlds valued `{p}` (1) and `∅` (2).
pub fn split_fork() -> FiniteModel {
    model(&["p"], &[(0, 1), (0, 2)], None, &[&[], &["p"], &[]])
}

/// Worlds `w = 0`, `x = 1`, `y = 2` with `w ≼ x`, `w ≼ y`,
/// `S(w) = w`, `S(x) = y`, `S(y) = w` and `p` true only at `y`.
///
/// Forward but not backward confluent; `x ⊨ ○p`, `x ⊭ p`, `y ⊨ p`, `y ⊭ ○p`.
pub fn next_fork() -> FiniteModel {
    model(&["p"], &[(0, 1), (0, 2)], Some(vec![0, 2, 0]), &[&[], &[], &["p"]])
}

/// Worlds `w = 0`, `v = 1`, `u = 2` with `v ≼ u`, `S(w) = v`, `S(v) = v`,
/// `S(u) = u` and `p` true only at `u`. Satisfies `¬○p` and `¬○¬p` at `w`.
pub fn split_successor() -> FiniteModel {
    model(&["p"], &[(1, 2)], Some(vec![1, 1, 2]), &[&[], &[], &["p"]])
}

/// Root `w = 0`, middle worlds `v1..v3 = 1..3` and maximal worlds
/// `u1..u5 = 4..8`, with `v1 ≼ u1, u2`, `v2 ≼ u3`, `v3 ≼ u4, u5`. All
/// maximal worlds agree on `{p, q}`.
pub fn three_branch() -> FiniteModel {
    model(
        &["p", "q"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (3, 7), (3, 8)],
        None,
        &[&[], &["p"], &["q"], &[], &["p", "q"], &["p", "q"], &["p", "q"], &["p", "q"], &["p", "q"]],
    )
}

/// [`three_branch`] with its maximal worlds merged into one world `u = 4`.
pub fn three_branch_merged() -> FiniteModel {
    model(
        &["p", "q"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        None,
        &[&[], &["p"], &["q"], &[], &["p", "q"]],
    )
}

/// The pairing between [`three_branch`] and [`three_branch_merged`].
pub fn three_branch_pairing() -> Vec<(World, World)> {
    vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 4), (6, 4), (7, 4), (8, 4)]
}

/// Root `w = 0` valued `{p}` below `v1..v3 = 1..3`, all below `u = 4`;
/// every world above the root is valued `{p, q}`.
pub fn diamond_of_three() -> FiniteModel {
    model(
        &["p", "q"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        None,
        &[&["p"], &["p", "q"], &["p", "q"], &["p", "q"], &["p", "q"]],
    )
}

/// A persistent depth-3 model whose root orbit `w, s1, s2` settles at `s2`,
/// with two middle worlds per instant and several maximal worlds per
/// instant that agree on their valuation.
///
/// | instant | root | middle | maximal |
/// |---|---|---|---|
/// | 0 | `w = 0` | `v00 = 1`, `v01 = 2` | `u00 = 3`, `u01 = 4` (above `v00`), `u02 = 5` (above `v01`) |
/// | 1 | `s1 = 6` | `v10 = 7`, `v11 = 8` | `u10 = 9` (above `v10`), `u12 = 10` (above `v11`) |
/// | 2 | `s2 = 11` | `v20 = 12`, `v21 = 13` | `u20 = 14` (above `v20`), `u21 = 15` (above `v21`) |
///
/// Middle worlds cross between instants 1 and 2 (`v10 → v21`,
/// `v11 → v20`) and the maximal worlds follow them.
pub fn layered_orbit() -> FiniteModel {
    let order = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 4),
        (2, 5),
        (6, 7),
        (6, 8),
        (7, 9),
        (8, 10),
        (11, 12),
        (11, 13),
        (12, 14),
        (13, 15),
    ];
    let succ = vec![6, 7, 8, 9, 9, 10, 11, 13, 12, 15, 14, 11, 12, 13, 14, 15];
    model(
        &["p", "q"],
        &order,
        Some(succ),
        &[
            &[],
            &[],
            &["p"],
            &["p"],
            &["p"],
            &["p"],
            &[],
            &["q"],
            &[],
            &["q"],
            &["q"],
            &[],
            &["p"],
            &[],
            &["p", "q"],
            &["p", "q"],
        ],
    )
}

/// Three instants `w_i = 4i`, each below two middle worlds `4i+1`, `4i+2`
/// that sit below one maximal world `4i+3`; every world strictly above
/// `w_i` is valued `T_i`. Instant 2 repeats forever.
///
/// `T = {p}, {p, q}, {q}` and the roots are valued `∅, {p}, {q}`.
pub fn contractible_orbit() -> FiniteModel {
    let mut order = Vec::new();
    for i in 0..3 {
        let b = 4 * i;
        order.extend([(b, b + 1), (b, b + 2), (b + 1, b + 3), (b + 2, b + 3)]);
    }
    let succ = vec![4, 5, 6, 7, 8, 9, 10, 11, 8, 9, 10, 11];
    model(
        &["p", "q"],
        &order,
        Some(succ),
        &[
            &[],
            &["p"],
            &["p"],
            &["p"],
            &["p"],
            &["p", "q"],
            &["p", "q"],
            &["p", "q"],
            &["q"],
            &["q"],
            &["q"],
            &["q"],
        ],
    )
}
