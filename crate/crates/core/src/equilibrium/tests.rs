use super::*;
use crate::formula::parse;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn alpha(names: &[&str]) -> Alphabet {
    Alphabet::from_names(names).unwrap()
}

fn set(a: &Alphabet, names: &[&str]) -> AtomSet {
    crate::kripke::atom_set(a, names.iter().copied()).unwrap()
}

#[test]
fn subsets_in_order() {
    let s: Vec<u64> = subsets(AtomSet(0b101)).map(|x| x.0).collect();
    assert_eq!(s, [0, 1, 4, 5]);
    assert_eq!(subsets(AtomSet::EMPTY).count(), 1);
}

#[test]
fn ht_examples() {
    let pq = alpha(&["p", "q"]);
    assert_eq!(ht_equilibrium_models(&[], &pq).unwrap().models, [AtomSet::EMPTY]);
    assert_eq!(ht_equilibrium_models(&[f("~p -> q")], &pq).unwrap().models, [set(&pq, &["q"])]);
    assert_eq!(
        ht_equilibrium_models(&[f("p | q")], &pq).unwrap().models,
        [set(&pq, &["p"]), set(&pq, &["q"])]
    );
    assert!(matches!(ht_equilibrium_models(&[f("o p")], &pq), Err(Error::TemporalOnPropositional)));
}

#[test]
fn completion_examples() {
    let pq = alpha(&["p", "q"]);
    let gamma = [f("~p -> q")];
    let probe = default_prop_probe(&gamma, &pq);
    assert!(completion_check_prop(&gamma, &pq, set(&pq, &["q"]), &probe).unwrap());
    assert!(!completion_check_prop(&gamma, &pq, set(&pq, &["p"]), &probe).unwrap());
    assert!(completion_check_prop(&[], &pq, AtomSet::EMPTY, &default_prop_probe(&[], &pq)).unwrap());
}

#[test]
fn theory_of_examples() {
    let p = alpha(&["p"]);
    let th = theory_of_atoms(&p, AtomSet(1), &[f("p"), f("~p")]).unwrap();
    assert_eq!(th.holds, [f("p")]);
    assert!(theory_of(&ThtLasso::new(p, 0, 1, vec![AtomSet(0)], vec![AtomSet(1)]).unwrap(), &[]).is_err());
}

#[test]
fn tel_always_p() {
    let p = alpha(&["p"]);
    let shapes = LassoShapeSet::single(0, 1).unwrap();
    let r = tel_equilibrium_models(&[f("[] p")], &p, &shapes, MinimalityBounds::default()).unwrap();
    assert_eq!(r.models, [ThtLasso::total(p.clone(), 0, 1, vec![AtomSet(1)]).unwrap()]);
    let shapes = LassoShapeSet::bounded(1, 2).unwrap();
    let r = tel_equilibrium_models(&[], &p, &shapes, MinimalityBounds::default()).unwrap();
    assert_eq!(r.models, [ThtLasso::total(p, 0, 1, vec![AtomSet(0)]).unwrap()]);
}

#[test]
fn eventually_depends_on_minimality_bounds() {
    // p once at instant 0 is minimal; p from instant 1 on only looks minimal
    // until a second prefix position lets H drop p after instant 1
    let p = alpha(&["p"]);
    let shapes = LassoShapeSet::bounded(1, 1).unwrap();
    let once = ThtLasso::total(p.clone(), 1, 1, vec![AtomSet(1), AtomSet(0)]).unwrap();
    let late = ThtLasso::total(p.clone(), 1, 1, vec![AtomSet(0), AtomSet(1)]).unwrap();
    let r = tel_equilibrium_models(&[f("<> p")], &p, &shapes, MinimalityBounds::default()).unwrap();
    assert_eq!(r.models, [once.clone(), late]);
    let wide = MinimalityBounds { extra_prefix: 1, loop_factor: 1 };
    let r = tel_equilibrium_models(&[f("<> p")], &p, &shapes, wide).unwrap();
    assert_eq!(r.models, [once]);
    assert_eq!(r.minimality_bounds, Some(wide));
}

#[test]
fn fixpoint_examples() {
    let p = alpha(&["p"]);
    let shapes = LassoShapeSet::bounded(1, 2).unwrap();
    let gamma = [f("[] p")];
    let all_p = ThtLasso::total(p.clone(), 0, 1, vec![AtomSet(1)]).unwrap();
    let none = ThtLasso::total(p.clone(), 0, 1, vec![AtomSet(0)]).unwrap();
    let probe = default_temporal_probe(&gamma, &p, 2);
    assert!(tel_fixpoint_check(&gamma, &p, &all_p, &probe, &shapes).unwrap().holds);
    let r = tel_fixpoint_check(&gamma, &p, &none, &probe, &shapes).unwrap();
    assert!(!r.holds);
    assert!(tel_fixpoint_check(&[], &p, &none, &[f("p"), f("~p")], &shapes).unwrap().holds);
}

#[test]
fn minimality_presentations() {
    let p = alpha(&["p"]);
    let c = ThtLasso::total(p, 0, 1, vec![AtomSet(1)]).unwrap();
    let shapes = LassoShapeSet::bounded(1, 2).unwrap();
    let s = minimality_shapes(&c, &shapes, MinimalityBounds::default());
    assert_eq!(s, [(0, 1), (0, 2), (1, 1), (1, 2)]);
    let wide = minimality_shapes(&c, &LassoShapeSet::single(0, 1).unwrap(), MinimalityBounds { extra_prefix: 1, loop_factor: 2 });
    assert_eq!(wide, [(0, 1), (0, 2), (1, 1), (1, 2)]);
}
