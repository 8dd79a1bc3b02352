use super::{Alphabet, Atom, Formula};
use crate::error::{Error, Result};

/// The bounded-depth schema over fresh atoms `p1..pn`:
/// `bd_1 = p1 ∨ ¬p1`, `bd_{n+1} = p_{n+1} ∨ (p_{n+1} → bd_n)`.
pub fn bd_axiom(n: usize) -> Result<Formula> {
    if n == 0 {
        return Err(Error::InvalidArgument("bd axiom index must be at least 1".into()));
    }
    let p = |i: usize| Formula::atom(&format!("p{i}"));
    let mut acc = Formula::or(p(1), Formula::not(p(1)));
    for i in 2..=n {
        acc = Formula::or(p(i), Formula::implies(p(i), acc));
    }
    Ok(acc)
}

/// `p ∨ (p → q) ∨ ¬q`, the schema that cuts intuitionistic logic down to
/// here-and-there.
pub fn hosoi_axiom(p: &Atom, q: &Atom) -> Result<Formula> {
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "schema instance needs two distinct atoms, got `{p}` twice"
        )));
    }
    let p = Formula::Atom(p.clone());
    let q = Formula::Atom(q.clone());
    Ok(Formula::or(
        Formula::or(p.clone(), Formula::implies(p, q.clone())),
        Formula::not(q),
    ))
}

/// `{¬p ∨ ¬¬p | p ∈ alphabet}`
pub fn weak_em_instances(alphabet: &Alphabet) -> Vec<Formula> {
    alphabet
        .atoms()
        .iter()
        .map(|a| {
            let p = Formula::Atom(a.clone());
            Formula::or(Formula::not(p.clone()), Formula::not(Formula::not(p)))
        })
        .collect()
}
