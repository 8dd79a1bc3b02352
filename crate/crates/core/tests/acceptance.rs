//! Acceptance criteria, one line each. Run with
//! `cargo test -p tel-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tel_core::bisim::{invariance_harness, verify_prop_bisim, verify_temporal_bisim, BisimRelation};
use tel_core::constructions::{contract_to_ht, contract_to_tht, merge_maximals_prop, merge_maximals_temporal};
use tel_core::equilibrium::{
    completion_check_prop, default_prop_probe, default_temporal_probe, ht_equilibrium_models, premise_horizon,
    tel_equilibrium_models, tel_fixpoint_check, MinimalityBounds,
};
use tel_core::formula::{bd_axiom, hosoi_axiom};
use tel_core::gallery::{chain, ht_frame, next_fork, split_successor};
use tel_core::kripke::{enumerate_frames, validate, Depth};
use tel_core::safebeliefs::{belief_candidates, prop_coincidence, temporal_coincidence, TemporalBounds, TemporalLogic};
use tel_core::semantics::frame_counterexample;
use tel_core::traces::ltl_model_search;
use tel_core::{
    frame_valid, gen, parse, satisfies, tht_satisfies, validates_bd, Alphabet, Atom, AtomSet, FiniteModel, Formula,
    Frame, LassoShapeSet, Layer, LogicClass, World,
};

type Check = Result<String, String>;

fn f(s: &str) -> Formula {
    parse(s).expect("criterion formula parses")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn next_fork_facts() -> Check {
    let m = next_fork();
    let (w, x, y) = (0, 1, 2);
    let sat = |v: World, s: &str| satisfies(&m, v, &f(s)).map_err(err);
    ensure(sat(x, "o p")? && !sat(x, "p")?, || "x: expected o p and not p".into())?;
    ensure(sat(y, "p")? && !sat(y, "o p")?, || "y: expected p and not o p".into())?;
    ensure(!sat(w, "(o p -> p) | (p -> o p)")?, || "w satisfies the linearity instance".into())?;
    let r = validate(&m);
    ensure(r.forward_confluent && !r.backward_confluent, || format!("{r:?}"))?;
    Ok("4 facts, linearity refuted at w, forward but not backward confluent".into())
}

fn split_successor_facts() -> Check {
    let m = split_successor();
    let gamma = [f("~o p"), f("~o ~p")];
    for g in &gamma {
        ensure(satisfies(&m, 0, g).map_err(err)?, || format!("{g} fails at w"))?;
    }
    let shapes = LassoShapeSet::up_to_length(4).map_err(err)?;
    let a = Alphabet::from_names(["p"]).map_err(err)?;
    let found = ltl_model_search(&gamma, &a, &shapes).map_err(err)?;
    ensure(found.is_none(), || format!("LTL model {}", found.unwrap()))?;
    Ok(format!("theory holds at w; no total lasso among {} shapes", shapes.shapes().len()))
}

fn depth_sweep() -> Check {
    let frames = enumerate_frames(LogicClass::Int, 4).map_err(err)?;
    let mut checks = 0;
    for fr in &frames {
        let m = FiniteModel::bare(fr.clone());
        let Depth::Finite(d) = validate(&m).depth else {
            return Err("infinite depth".into());
        };
        for n in 1..=3 {
            let v = validates_bd(&m, n).map_err(err)?;
            ensure(v == (d <= n), || format!("bd_{n} on depth {d}: {v}"))?;
            checks += 1;
        }
    }
    Ok(format!("{} frames, {checks} checks, 0 discrepancies", frames.len()))
}

fn hosoi() -> Check {
    let (p, q) = (Atom::new("p").map_err(err)?, Atom::new("q").map_err(err)?);
    let h = hosoi_axiom(&p, &q).map_err(err)?;
    ensure(frame_valid(&ht_frame(), &h).map_err(err)?, || "not valid on the HT frame".into())?;
    ensure(!frame_valid(&chain(3), &h).map_err(err)?, || "valid on the 3-chain".into())?;
    ensure(!frame_valid(&chain(2), &bd_axiom(1).map_err(err)?).map_err(err)?, || "bd_1 valid on the 2-chain".into())?;
    Ok("valid on HT, refuted on 3-chain; bd_1 refuted on 2-chain".into())
}

fn persistent_formulas() -> Check {
    let formulas = [f("(o p -> o q) -> o (p -> q)"), f("(<> p -> [] q) -> [] (p -> q)")];
    let persistent = enumerate_frames(LogicClass::ItlP, 4).map_err(err)?;
    for fr in &persistent {
        let m = FiniteModel::bare(fr.clone());
        for phi in &formulas {
            ensure(frame_valid(&m, phi).map_err(err)?, || format!("{phi} fails on a persistent frame"))?;
        }
    }
    let expanding = enumerate_frames(LogicClass::ItlE, 4).map_err(err)?;
    let mut found = None;
    'search: for fr in &expanding {
        let m = FiniteModel::bare(fr.clone());
        for phi in &formulas {
            if let Some((cm, w)) = frame_counterexample(&m, phi, u128::MAX).map_err(err)? {
                found = Some((phi.clone(), cm.len(), w));
                break 'search;
            }
        }
    }
    let (phi, n, w) = found.ok_or("no countermodel among expanding frames")?;
    Ok(format!("valid on {} persistent frames; {phi} refuted at world {w} of a {n}-world expanding frame", persistent.len()))
}

fn maximal_successors() -> Check {
    let maximal_kept = |fr: &Frame| fr.worlds().all(|w| !fr.is_maximal(w) || fr.is_maximal(fr.succ_of(w).unwrap()));
    let persistent = enumerate_frames(LogicClass::ItlP, 4).map_err(err)?;
    ensure(persistent.iter().all(maximal_kept), || "a persistent frame moves a maximal world".into())?;
    let m = next_fork();
    let fr = m.frame();
    ensure(fr.is_maximal(2) && !fr.is_maximal(fr.succ_of(2).unwrap()), || "next fork keeps y maximal".into())?;
    Ok(format!("{} persistent frames; y maximal with S(y) = w not maximal", persistent.len()))
}

// Corpus generators for the constructions.

fn random_poset(r: &mut ChaCha8Rng, n: usize) -> Vec<(World, World)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.4) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Gives every maximal world the union of the valuations of the maximal
/// worlds it shares a lower bound with, so weak excluded middle holds
/// everywhere while the valuation stays monotone.
fn agree_on_maximals(m: &FiniteModel) -> FiniteModel {
    let fr = m.frame();
    let maxes: Vec<World> = fr.worlds().filter(|&w| fr.is_maximal(w)).collect();
    let mut cluster: Vec<usize> = (0..m.len()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let root = find(c, c[x]);
            c[x] = root;
        }
        c[x]
    }
    for v in fr.worlds() {
        let above: Vec<World> = fr.maximal_above(v).iter().collect();
        for pair in above.windows(2) {
            let (a, b) = (find(&mut cluster, pair[0]), find(&mut cluster, pair[1]));
            cluster[a] = b;
        }
    }
    let mut val = m.valuation().to_vec();
    for &x in &maxes {
        let cx = find(&mut cluster, x);
        let mut u = AtomSet::EMPTY;
        for &y in &maxes {
            if find(&mut cluster, y) == cx {
                u = AtomSet(u.0 | m.val(y).0);
            }
        }
        val[x] = u;
    }
    FiniteModel::new(m.frame_arc().clone(), m.alphabet().clone(), val).expect("monotone repair")
}

fn pq() -> Alphabet {
    Alphabet::from_names(["p", "q"]).unwrap()
}

/// Model with a top world whose strict upset above `w` is uniformly valued.
fn contractible_prop(r: &mut ChaCha8Rng) -> (FiniteModel, World) {
    let n = r.gen_range(2..=6);
    let mut pairs = random_poset(r, n - 1);
    pairs.extend((0..n - 1).map(|i| (i, n - 1)));
    let fr = Frame::from_pairs(n, &pairs, None).unwrap();
    let w = r.gen_range(0..n);
    let t = AtomSet(r.gen_range(0..4));
    let h = AtomSet(r.gen::<u64>() & t.0);
    let up = fr.strict_up(w);
    let val = (0..n).map(|v| if up.contains(v) { t } else { h }).collect();
    (FiniteModel::new(fr, pq(), val).unwrap(), w)
}

/// Lasso-shaped model: per position a root, some middle worlds and a top,
/// everything above the root valued `T_i`.
fn contractible_temporal(r: &mut ChaCha8Rng) -> (FiniteModel, World) {
    let (prefix, loop_len) = *[(0, 1), (1, 1), (0, 2), (1, 2), (0, 3)].choose(r).unwrap();
    let positions = prefix + loop_len;
    let mut spare = 6 - 2 * positions;
    let mut groups = Vec::new();
    let mut next = 0;
    for _ in 0..positions {
        let mids = r.gen_range(0..=spare.min(2));
        spare -= mids;
        groups.push((next, (next + 1..next + 1 + mids).collect::<Vec<_>>(), next + 1 + mids));
        next += 2 + mids;
    }
    let after = |i: usize| if i + 1 < positions { i + 1 } else { prefix };
    let mut pairs = Vec::new();
    let mut succ = vec![0; next];
    let mut val = vec![AtomSet::EMPTY; next];
    for (i, (root, mids, top)) in groups.iter().enumerate() {
        let (nroot, nmids, ntop) = &groups[after(i)];
        let t = AtomSet(r.gen_range(0..4));
        val[*root] = AtomSet(r.gen::<u64>() & t.0);
        pairs.push((*root, *top));
        succ[*root] = *nroot;
        succ[*top] = *ntop;
        val[*top] = t;
        for &x in mids {
            pairs.extend([(*root, x), (x, *top)]);
            val[x] = t;
            let targets: Vec<World> = nmids.iter().copied().chain([*ntop]).collect();
            succ[x] = *targets.choose(r).unwrap();
        }
    }
    let fr = Frame::from_pairs(next, &pairs, Some(succ)).unwrap();
    (FiniteModel::new(fr, pq(), val).unwrap(), 0)
}

struct Corpus {
    models: usize,
    probes: usize,
}

fn run_corpus(
    name: &str,
    r: &mut ChaCha8Rng,
    temporal: bool,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> (FiniteModel, World),
    build: impl Fn(&FiniteModel, World) -> tel_core::Result<(FiniteModel, World, BisimRelation)>,
) -> Result<Corpus, String> {
    let mut c = Corpus { models: 0, probes: 0 };
    let mut attempts = 0;
    while c.models < 100 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!("{name}: only {} models met the precondition", c.models));
        }
        let (m, w) = sample(r);
        let (out, root, rel) = match build(&m, w) {
            Ok(x) => x,
            Err(tel_core::Error::Precondition(_)) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let report = if temporal {
            verify_temporal_bisim(&m, &out, &rel, None)
        } else {
            verify_prop_bisim(&m, &out, &rel)
        }
        .map_err(err)?;
        if let Some(v) = report.violation {
            return Err(format!("{name}: {v} on {}", m.to_json_string()));
        }
        let probe = gen::formulas(r, &pq(), 4, temporal, 50);
        if let Some(phi) = invariance_harness(&m, w, &out, root, &rel, &probe).map_err(err)? {
            return Err(format!("{name}: {phi} distinguishes {w} from {root}"));
        }
        c.models += 1;
        c.probes += probe.len();
    }
    Ok(c)
}

fn constructions() -> Check {
    let mut r = common::rng(2024);
    let mut total = Corpus { models: 0, probes: 0 };
    let mut add = |c: Corpus| {
        total.models += c.models;
        total.probes += c.probes;
    };
    let random_prop = |r: &mut ChaCha8Rng| {
        let n = r.gen_range(1..=6);
        let pairs = random_poset(r, n);
        let fr = Frame::from_pairs(n, &pairs, None).unwrap();
        let m = agree_on_maximals(&gen::revalue(r, &FiniteModel::bare(fr), &pq()));
        let w = r.gen_range(0..n);
        (m, w)
    };
    add(run_corpus("merge", &mut r, false, random_prop, |m, w| {
        merge_maximals_prop(m, w).map(|s| (s.model, s.root, s.relation))
    })?);
    add(run_corpus("contract", &mut r, false, contractible_prop, |m, w| {
        contract_to_ht(m, w).map(|s| (s.model, s.root, s.relation))
    })?);
    let persistent = enumerate_frames(LogicClass::ItlP, 4).map_err(err)?;
    let random_temporal = |r: &mut ChaCha8Rng| {
        let fr = persistent.choose(r).unwrap().clone();
        let m = agree_on_maximals(&gen::revalue(r, &FiniteModel::bare(fr), &pq()));
        let w = r.gen_range(0..m.len());
        (m, w)
    };
    add(run_corpus("temporal merge", &mut r, true, random_temporal, |m, w| {
        merge_maximals_temporal(m, w).map(|s| (s.model, s.root, s.relation))
    })?);
    add(run_corpus("temporal contract", &mut r, true, contractible_temporal, |m, w| {
        let s = contract_to_tht(m, w)?;
        let root = s.lasso.world_of(0, Layer::Here);
        Ok((s.lasso.to_model()?, root, s.relation))
    })?);
    Ok(format!(
        "4 constructions x 100 models, {} invariance probes, 0 violations",
        total.probes
    ))
}

fn propositional_triangle() -> Check {
    let suite = ["", "~p -> q", "p | q", "~p", "p | ~p -> p"];
    let a = pq();
    for s in suite {
        let gamma: Vec<Formula> = if s.is_empty() { vec![] } else { vec![f(s)] };
        let eq = ht_equilibrium_models(&gamma, &a).map_err(err)?.models;
        let rep = prop_coincidence(&gamma, &a, &[LogicClass::Ht, LogicClass::Int], 4).map_err(err)?;
        let probe = default_prop_probe(&gamma, &a);
        let mut completion = Vec::new();
        for t in 0..4 {
            if completion_check_prop(&gamma, &a, AtomSet(t), &probe).map_err(err)? {
                completion.push(AtomSet(t));
            }
        }
        ensure(rep.accepted[0] == eq, || format!("{{{s}}}: HT safe beliefs {:?} vs equilibria {eq:?}", rep.accepted[0]))?;
        ensure(completion == eq, || format!("{{{s}}}: completions {completion:?} vs equilibria {eq:?}"))?;
        ensure(rep.accepted[1] == eq, || format!("{{{s}}}: INT safe beliefs {:?} vs equilibria {eq:?}", rep.accepted[1]))?;
    }
    Ok(format!("{} theories, four characterizations agree", suite.len()))
}

fn temporal_triangle() -> Check {
    let shapes = LassoShapeSet::bounded(1, 2).map_err(err)?;
    let bounds = TemporalBounds {
        shapes: shapes.clone(),
        max_worlds: 4,
    };
    let suite: [(&str, &[&str]); 3] = [("", &["p"]), ("[] p", &["p"]), ("[] (~p -> q)", &["p", "q"])];
    let mut problems = Vec::new();
    let mut candidates = 0;
    for (s, atoms) in suite {
        let a = Alphabet::from_names(atoms).map_err(err)?;
        let gamma: Vec<Formula> = if s.is_empty() { vec![] } else { vec![f(s)] };
        let eq = tel_equilibrium_models(&gamma, &a, &shapes, MinimalityBounds::default()).map_err(err)?;
        let rep = temporal_coincidence(&gamma, &a, &[TemporalLogic::Tht, TemporalLogic::ItlBd(2)], &bounds)
            .map_err(err)?;
        let eq_sets: Vec<_> = eq
            .models
            .iter()
            .map(tel_core::safebeliefs::TemporalBeliefSet::from_lasso)
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let mut fixpoints = Vec::new();
        for t in belief_candidates(&a, &shapes).map_err(err)? {
            candidates += 1;
            let l = t.to_lasso();
            let probe = default_temporal_probe(&gamma, &a, premise_horizon(l.prefix(), l.loop_len(), &shapes));
            if tel_fixpoint_check(&gamma, &a, &l, &probe, &shapes).map_err(err)?.holds {
                fixpoints.push(t);
            }
        }
        let show = |v: &[tel_core::safebeliefs::TemporalBeliefSet]| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        if rep.accepted[0] != eq_sets {
            problems.push(format!("{{{s}}}: THT safe beliefs [{}] vs equilibria [{}]", show(&rep.accepted[0]), show(&eq_sets)));
        }
        if fixpoints != eq_sets {
            problems.push(format!("{{{s}}}: fixpoints [{}] vs equilibria [{}]", show(&fixpoints), show(&eq_sets)));
        }
        for (t, answers) in &rep.differences {
            problems.push(format!("{{{s}}}: {t} THT={} ITLbd(2)={}", answers[0], answers[1]));
        }
    }
    if problems.is_empty() {
        Ok(format!("{candidates} candidates, shapes l<=1 lambda<=2, ITLbd(2) <= 4 worlds, 0 mismatches"))
    } else {
        Err(format!("{} mismatches at shapes l<=1 lambda<=2, ITLbd(2) <= 4 worlds: {}", problems.len(), problems.join("; ")))
    }
}

fn negation_on_lassos() -> Check {
    let mut r = common::rng(10);
    let a = pq();
    let mut checks = 0;
    for _ in 0..1000 {
        let t = gen::lasso(&mut r, &a, 3, 3, false);
        let phi = gen::formula(&mut r, &a, 4, true);
        let neg = Formula::not(phi.clone());
        for i in 0..t.len() {
            let here = tht_satisfies(&t, i, Layer::Here, &phi).map_err(err)?;
            let there = tht_satisfies(&t, i, Layer::There, &phi).map_err(err)?;
            ensure(tht_satisfies(&t, i, Layer::Here, &neg).map_err(err)? == !there, || format!("negation: {phi} on {t} at {i}"))?;
            ensure(!here || there, || format!("persistence: {phi} on {t} at {i}"))?;
            checks += 1;
        }
    }
    Ok(format!("1000 lassos, {checks} instant checks, 0 violations"))
}

fn classical_collapse() -> Check {
    let mut r = common::rng(11);
    let a = pq();
    let mut checks = 0;
    for _ in 0..500 {
        let t = gen::lasso(&mut r, &a, 3, 3, true);
        for phi in gen::formulas(&mut r, &a, 4, true, 10) {
            for i in 0..t.len() {
                let v = tht_satisfies(&t, i, Layer::Here, &phi).map_err(err)?;
                ensure(v == common::ltl(&t, i, &phi), || format!("{phi} on {t} at {i}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("500 total lassos, {checks} evaluations, 0 disagreements"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("next-fork model facts", next_fork_facts),
        ("split-successor model and LTL inconsistency", split_successor_facts),
        ("bd_n validity iff depth <= n", depth_sweep),
        ("Hosoi axiom and bd_1", hosoi),
        ("persistent-frame formulas", persistent_formulas),
        ("successors of maximal worlds", maximal_successors),
        ("constructions end to end", constructions),
        ("propositional characterizations", propositional_triangle),
        ("temporal characterizations", temporal_triangle),
        ("negation and persistence on lassos", negation_on_lassos),
        ("classical collapse on total lassos", classical_collapse),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
