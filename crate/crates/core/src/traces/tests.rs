use super::*;
use crate::formula::parse;
use crate::semantics;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn p_alpha() -> Alphabet {
    Alphabet::from_names(["p"]).unwrap()
}

fn constant(h: u64, t: u64) -> ThtLasso {
    ThtLasso::new(p_alpha(), 0, 1, vec![AtomSet(h)], vec![AtomSet(t)]).unwrap()
}

#[test]
fn constant_trace_always() {
    assert!(tht_satisfies(&constant(1, 1), 0, Layer::Here, &f("[] p")).unwrap());
}

#[test]
fn double_negation_does_not_collapse() {
    let t = constant(0, 1);
    assert!(tht_satisfies(&t, 0, Layer::Here, &f("~~p")).unwrap());
    assert!(!tht_satisfies(&t, 0, Layer::Here, &f("p")).unwrap());
    assert!(tht_satisfies(&t, 0, Layer::There, &f("p")).unwrap());
}

#[test]
fn ordering_examples() {
    let a = constant(0, 1);
    let b = constant(1, 1);
    assert!(leq(&a, &a).unwrap());
    assert!(!lt(&a, &a).unwrap());
    assert!(lt(&a, &b).unwrap());
    assert!(!leq(&b, &a).unwrap());
    let x = ThtLasso::total(p_alpha(), 0, 2, vec![AtomSet(1), AtomSet(0)]).unwrap();
    let y = ThtLasso::total(p_alpha(), 0, 2, vec![AtomSet(0), AtomSet(1)]).unwrap();
    assert!(!leq(&x, &y).unwrap() && !leq(&y, &x).unwrap());
    // different shapes, same trace
    let z = x.unroll(1, 4).unwrap();
    assert!(leq(&x, &z).unwrap() && leq(&z, &x).unwrap() && same_trace(&x, &z).unwrap());
    let q = Alphabet::from_names(["q"]).unwrap();
    let other = ThtLasso::total(q, 0, 1, vec![AtomSet(0)]).unwrap();
    assert!(leq(&a, &other).is_err());
}

#[test]
fn totality() {
    assert!(is_total(&constant(1, 1)));
    assert!(!is_total(&constant(0, 1)));
}

#[test]
fn canonical_form() {
    let t = ThtLasso::total(p_alpha(), 2, 4, vec![AtomSet(0), AtomSet(1), AtomSet(0), AtomSet(1), AtomSet(0), AtomSet(1)])
        .unwrap();
    let c = t.canonical();
    assert_eq!((c.prefix(), c.loop_len()), (0, 2));
    assert!(same_trace(&t, &c).unwrap());
}

#[test]
fn lasso_rejects_bad_states() {
    assert!(ThtLasso::new(p_alpha(), 0, 1, vec![AtomSet(1)], vec![AtomSet(0)]).is_err());
    assert!(ThtLasso::new(p_alpha(), 0, 0, vec![], vec![]).is_err());
    assert!(ThtLasso::new(p_alpha(), 1, 1, vec![AtomSet(0)], vec![AtomSet(0)]).is_err());
}

#[test]
fn instants_wrap_into_the_loop() {
    let t = ThtLasso::total(p_alpha(), 1, 2, vec![AtomSet(0), AtomSet(1), AtomSet(0)]).unwrap();
    assert_eq!(t.position(3), 1);
    assert_eq!(t.position(4), 2);
    assert!(tht_satisfies(&t, 5, Layer::Here, &f("p")).unwrap());
}

#[test]
fn consistency_examples() {
    let shapes = LassoShapeSet::bounded(2, 2).unwrap();
    let v = tht_consistent_bounded(&[f("~o p"), f("~o ~p")], &shapes).unwrap();
    assert!(!v.is_refuted());
    let v = tht_consistent_bounded(&[f("p")], &shapes).unwrap();
    let Some(semantics::Witness::Lasso { lasso, .. }) = v.witness() else { panic!() };
    assert!(lasso.here()[0].contains(0));
    assert_eq!((lasso.prefix(), lasso.loop_len()), (0, 1));
    let shapes3 = LassoShapeSet::bounded(3, 3).unwrap();
    assert!(!tht_consistent_bounded(&[f("<> p"), f("[] ~p")], &shapes3).unwrap().is_refuted());
}

#[test]
fn entailment_examples() {
    let shapes = LassoShapeSet::bounded(2, 2).unwrap();
    assert!(!tht_bounded_entails(&[f("[] p")], &[f("o p")], &shapes).unwrap().is_refuted());
    for (g, d) in [(vec![], f("p | ~p")), (vec![f("~~p")], f("p"))] {
        let v = tht_bounded_entails(&g, &[d.clone()], &shapes).unwrap();
        let Some(semantics::Witness::Lasso { lasso, instant }) = v.witness() else { panic!() };
        assert_eq!(*instant, 0);
        assert_eq!(*lasso, constant(0, 1));
        assert!(v.replay(&g, &[d]).unwrap());
    }
}

#[test]
fn model_view_agrees_with_lasso_evaluation() {
    let alpha = Alphabet::from_names(["p", "q"]).unwrap();
    let t = ThtLasso::new(
        alpha,
        1,
        2,
        vec![AtomSet(0), AtomSet(1), AtomSet(2)],
        vec![AtomSet(1), AtomSet(3), AtomSet(2)],
    )
    .unwrap();
    let m = t.to_model().unwrap();
    for s in ["p U q", "q R p", "~p -> o q", "[] (p | q)", "<> ~q"] {
        let phi = f(s);
        let ext = semantics::extension(&m, &phi).unwrap();
        for i in 0..4 {
            for layer in [Layer::Here, Layer::There] {
                assert_eq!(
                    tht_satisfies(&t, i, layer, &phi).unwrap(),
                    ext.contains(t.world_of(i, layer)),
                    "{s} at {i} {layer:?}"
                );
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let t = constant(0, 1);
    let s = t.to_json_string();
    assert_eq!(ThtLasso::from_json_str(&s).unwrap(), t);
    assert!(ThtLasso::from_json_str(r#"{"atoms":["p"],"prefix":0,"loop":1,"H":[["p"]],"T":[[]]}"#).is_err());
}
