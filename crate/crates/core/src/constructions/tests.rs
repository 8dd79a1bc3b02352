use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bisim::{invariance_harness, verify_prop_bisim, verify_temporal_bisim};
use crate::gallery::*;
use crate::gen;

fn probe(m: &FiniteModel, temporal: bool, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen::formulas(&mut rng, m.alphabet(), 4, temporal, 60)
}

#[test]
fn weak_em_examples() {
    let ht = FiniteModel::build(&["p"], &[(0, 1)], None, &[&[], &["p"]]).unwrap();
    assert!(weak_em_holds(&ht, 0, ht.alphabet()).unwrap());
    let fork = split_fork();
    assert!(!weak_em_holds(&fork, 0, fork.alphabet()).unwrap());
    let single = FiniteModel::build(&["p", "q"], &[], None, &[&["q"]]).unwrap();
    assert!(weak_em_holds(&single, 0, single.alphabet()).unwrap());
}

#[test]
fn merge_three_branch() {
    let m = three_branch();
    let s = merge_maximals_prop(&m, 0).unwrap();
    assert_eq!(s.model, three_branch_merged());
    assert_eq!(s.root, 0);
    assert_eq!(s.relation, BisimRelation::new(three_branch_pairing()));
    assert!(verify_prop_bisim(&m, &s.model, &s.relation).unwrap().holds());
    assert_eq!(invariance_harness(&m, 0, &s.model, 0, &s.relation, &probe(&m, false, 1)).unwrap(), None);
}

#[test]
fn merge_keeps_unique_maximum() {
    let ht = FiniteModel::build(&["p"], &[(0, 1)], None, &[&[], &["p"]]).unwrap();
    let s = merge_maximals_prop(&ht, 0).unwrap();
    assert_eq!(s.model, ht);
    assert!(merge_maximals_prop(&split_fork(), 0).is_err());
}

#[test]
fn contract_diamond_of_three() {
    let m = diamond_of_three();
    let s = contract_to_ht(&m, 0).unwrap();
    assert_eq!(s.model.val(0), m.val(0));
    assert_eq!(s.model.val(1), m.val(4));
    assert_eq!(s.relation, BisimRelation::new([(0, 0), (1, 1), (2, 1), (3, 1), (4, 1)]));
    assert!(verify_prop_bisim(&m, &s.model, &s.relation).unwrap().holds());
    assert_eq!(invariance_harness(&m, 0, &s.model, 0, &s.relation, &probe(&m, false, 2)).unwrap(), None);
}

#[test]
fn contract_ht_input_and_maximal_root() {
    let ht = FiniteModel::build(&["p"], &[(0, 1)], None, &[&[], &["p"]]).unwrap();
    assert_eq!(contract_to_ht(&ht, 0).unwrap().model, ht);
    let s = contract_to_ht(&ht, 1).unwrap();
    assert!(verify_prop_bisim(&ht, &s.model, &s.relation).unwrap().holds());
}

#[test]
fn contract_rejects_mixed_upper_valuation() {
    let m = FiniteModel::build(&["p"], &[(0, 1), (1, 2)], None, &[&[], &[], &["p"]]).unwrap();
    let err = contract_to_ht(&m, 0).unwrap_err().to_string();
    assert!(err.contains("world 1"), "{err}");
}

#[test]
fn temporal_merge_layered_orbit() {
    let m = layered_orbit();
    let s = merge_maximals_temporal(&m, 0).unwrap();
    assert_eq!(s.model.len(), 12);
    for i in 0..3 {
        assert_eq!(s.model.frame().maximal_above(4 * i).len(), 1);
    }
    assert!(s.relation.contains(3, 3) && s.relation.contains(4, 3) && s.relation.contains(5, 3));
    let report = verify_temporal_bisim(&m, &s.model, &s.relation, None).unwrap();
    assert!(report.holds(), "{:?}", report.violation);
    assert_eq!(invariance_harness(&m, 0, &s.model, 0, &s.relation, &probe(&m, true, 3)).unwrap(), None);
}

#[test]
fn temporal_merge_rejects_non_persistent() {
    assert!(matches!(merge_maximals_temporal(&next_fork(), 0), Err(Error::Precondition(_))));
}

#[test]
fn contract_orbit_to_lasso() {
    let m = contractible_orbit();
    let s = contract_to_tht(&m, 0).unwrap();
    assert_eq!((s.lasso.prefix(), s.lasso.loop_len()), (2, 1));
    for i in 0..3 {
        assert_eq!(s.lasso.state(i), (m.val(4 * i), m.val(4 * i + 3)));
    }
    let right = s.lasso.to_model().unwrap();
    assert!(verify_temporal_bisim(&m, &right, &s.relation, None).unwrap().holds());
    assert_eq!(invariance_harness(&m, 0, &right, 0, &s.relation, &probe(&m, true, 4)).unwrap(), None);
}

#[test]
fn contract_rejects_two_maxima() {
    let err = contract_to_tht(&layered_orbit(), 0).unwrap_err().to_string();
    assert!(err.contains("instant 0"), "{err}");
}

#[test]
fn classical_trace_of_contractible_orbit() {
    let m = contractible_orbit();
    let t = extract_classical_trace(&m, 0).unwrap();
    assert!(t.is_total());
    assert_eq!((t.prefix(), t.loop_len()), (2, 1));
    for i in 0..3 {
        assert_eq!(t.state(i).1, m.val(4 * i + 3));
    }
    let v = classical_source(&m, 0).unwrap();
    let p = probe(&m, true, 5);
    let at_v: Vec<Formula> = p.iter().filter(|f| extension(&m, f).unwrap().contains(v)).cloned().collect();
    assert!(lost_in_trace(&m, v, &t, &at_v).unwrap().is_empty());
    assert!(lost_in_trace(&m, 0, &t, &p).unwrap().is_empty());
}
