//! Shared workloads for the criterion benches.

use rand::rngs::StdRng;
use rand::SeedableRng;
use tel_core::{gen, parse, Alphabet, Formula, ThtLasso};

pub fn alphabet(n: usize) -> Alphabet {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    Alphabet::from_names(&names).expect("valid names")
}

pub fn formulas(seed: u64, a: &Alphabet, depth: usize, temporal: bool, n: usize) -> Vec<Formula> {
    gen::formulas(&mut StdRng::seed_from_u64(seed), a, depth, temporal, n)
}

pub fn lassos(seed: u64, a: &Alphabet, len: usize, n: usize) -> Vec<ThtLasso> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n).map(|_| gen::lasso(&mut rng, a, len, len, false)).collect()
}

/// A small normal program: choice between `p_i` and `q_i` for each `i`,
/// with `q_i` forcing `p_{i+1}`.
pub fn choice_program(n: usize) -> (Vec<Formula>, Alphabet) {
    let mut rules = Vec::new();
    for i in 0..n {
        rules.push(parse(&format!("~p{i} -> q{i}")).unwrap());
        rules.push(parse(&format!("~q{i} -> p{i}")).unwrap());
        if i + 1 < n {
            rules.push(parse(&format!("q{i} -> p{}", i + 1)).unwrap());
        }
    }
    let a = Alphabet::of_formulas(&rules);
    (rules, a)
}
