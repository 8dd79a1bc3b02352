use super::*;
use crate::equilibrium::{ht_equilibrium_models, tel_equilibrium_models, MinimalityBounds};
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

fn bounds() -> TemporalBounds {
    TemporalBounds {
        shapes: LassoShapeSet::bounded(1, 2).unwrap(),
        max_worlds: 4,
    }
}

#[test]
fn propositional_examples() {
    let pq = alpha(&["p", "q"]);
    let gamma = [f("~p -> q")];
    let v = prop_safe_belief_check(LogicClass::Ht, &gamma, &pq, set(&pq, &["q"]), 2).unwrap();
    assert!(v.consistent && v.accepted());
    let v = prop_safe_belief_check(LogicClass::Ht, &gamma, &pq, set(&pq, &["p", "q"]), 2).unwrap();
    assert!(v.consistent);
    assert!(v.entailment.is_refuted());
    let v = prop_safe_belief_check(LogicClass::Int, &[f("p")], &alpha(&["p"]), AtomSet::EMPTY, 3).unwrap();
    assert!(!v.consistent && v.consistency_witness.is_none());
}

#[test]
fn ht_safe_beliefs_are_equilibrium_models() {
    let pq = alpha(&["p", "q"]);
    for th in [vec![], vec![f("~p -> q")], vec![f("p | q")], vec![f("~p")], vec![f("p | ~p -> p")]] {
        let report = prop_coincidence(&th, &pq, &[LogicClass::Ht, LogicClass::Int], 3).unwrap();
        assert!(report.coincide(), "{th:?}: {:?}", report.differences);
        assert_eq!(report.accepted[0], ht_equilibrium_models(&th, &pq).unwrap().models);
    }
}

#[test]
fn temporal_examples() {
    let p = alpha(&["p"]);
    let everywhere = TemporalBeliefSet::new(p.clone(), 0, 1, vec![set(&p, &["p"])]).unwrap();
    let nowhere = TemporalBeliefSet::new(p.clone(), 0, 1, vec![AtomSet::EMPTY]).unwrap();
    let first = TemporalBeliefSet::new(p.clone(), 1, 1, vec![set(&p, &["p"]), AtomSet::EMPTY]).unwrap();
    let always = [f("[] p")];

    let v = temporal_safe_belief_check(TemporalLogic::Tht, &always, &everywhere, &bounds()).unwrap();
    assert!(v.accepted());
    let v = temporal_safe_belief_check(TemporalLogic::Tht, &always, &nowhere, &bounds()).unwrap();
    assert!(!v.consistent);
    let v = temporal_safe_belief_check(TemporalLogic::Tht, &[], &first, &bounds()).unwrap();
    assert!(v.consistent && v.entailment.is_refuted());
    let Some(Witness::Lasso { lasso, .. }) = v.entailment.witness() else {
        panic!("expected a lasso witness")
    };
    assert_eq!(lasso.state(0), (AtomSet::EMPTY, set(&p, &["p"])));
    let v = temporal_safe_belief_check(TemporalLogic::ItlBd(2), &always, &everywhere, &bounds()).unwrap();
    assert!(v.accepted());
}

#[test]
fn belief_sets_and_lassos() {
    let pq = alpha(&["p", "q"]);
    let t = TemporalBeliefSet::new(pq.clone(), 1, 2, vec![set(&pq, &["p"]), AtomSet::EMPTY, set(&pq, &["q"])]).unwrap();
    assert!(t.contains(0, 0) && !t.contains(1, 1) && t.contains(4, 1) && !t.contains(5, 1));
    assert_eq!(TemporalBeliefSet::from_lasso(&t.to_lasso()).unwrap(), t);
    let back = TemporalBeliefSet::from_json_str(&t.to_json_string()).unwrap();
    assert_eq!(back, t);
    let text = r#"{"atoms":["p"],"prefix":0,"loop":1,"in":[[]]}"#;
    assert_eq!(TemporalBeliefSet::from_json_str(text).unwrap().to_lasso().there(), [AtomSet::EMPTY]);
    let partial = ThtLasso::new(alpha(&["p"]), 0, 1, vec![AtomSet::EMPTY], vec![AtomSet(1)]).unwrap();
    assert!(TemporalBeliefSet::from_lasso(&partial).is_err());
}

#[test]
fn temporal_coincidence_and_equilibria() {
    let p = alpha(&["p"]);
    let logics = [TemporalLogic::ItlBd(2), TemporalLogic::Tht];
    let b = TemporalBounds {
        shapes: LassoShapeSet::bounded(1, 1).unwrap(),
        max_worlds: 4,
    };
    for th in [vec![], vec![f("[] p")], vec![f("p | o p")]] {
        let report = temporal_coincidence(&th, &p, &logics, &b).unwrap();
        assert!(report.coincide(), "{th:?}: {:?}", report.differences);
        let eq = tel_equilibrium_models(&th, &p, &b.shapes, MinimalityBounds::default()).unwrap();
        let eq: Vec<_> = eq.models.iter().map(|m| TemporalBeliefSet::from_lasso(m).unwrap()).collect();
        assert_eq!(report.accepted[1], eq);
    }
    let empty = temporal_coincidence(&[], &p, &logics, &b).unwrap();
    assert_eq!(empty.accepted[0].len(), 1);
    assert!(empty.accepted[0][0].members().iter().all(|s| s.is_empty()));
}

// With loops of length 2 the THT refutation of `∅ (∅ {p})^ω` is a lasso of
// three instants; as a Kripke model it needs six worlds, beyond the four
// searched here.
#[test]
fn coincidence_is_bound_relative() {
    let p = alpha(&["p"]);
    let b = bounds();
    let t = TemporalBeliefSet::new(p.clone(), 1, 2, vec![AtomSet::EMPTY, AtomSet::EMPTY, set(&p, &["p"])]).unwrap();
    assert!(temporal_safe_belief_check(TemporalLogic::ItlBd(2), &[], &t, &b).unwrap().accepted());
    let v = temporal_safe_belief_check(TemporalLogic::Tht, &[], &t, &b).unwrap();
    let Some(Witness::Lasso { lasso, instant }) = v.entailment.witness() else {
        panic!("expected a lasso witness")
    };
    let m = lasso.to_model().unwrap();
    assert_eq!(m.len(), 6);
    assert!(LogicClass::ItlBd(2).admits(&crate::kripke::validate(&m)));
    let (premises, goals) = temporal_premises(&[], &t, model_horizon(&t, 6));
    let w = lasso.world_of(*instant, crate::traces::Layer::Here);
    let holds = |phi: &Formula| crate::semantics::satisfies(&m, w, phi).unwrap();
    assert!(premises.iter().all(holds));
    assert!(!goals.iter().all(holds));
}

#[test]
fn logic_names() {
    assert_eq!("THT".parse::<TemporalLogic>().unwrap(), TemporalLogic::Tht);
    assert_eq!("ITLbd(2)".parse::<TemporalLogic>().unwrap(), TemporalLogic::ItlBd(2));
    assert!("INT".parse::<TemporalLogic>().is_err());
}
