//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its runtime; the process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use epiforget::kripke::{bisimilar, eval_basic, frame_properties, isomorphic};
use epiforget::search::{
    check_valid_bounded, find_countermodel, random_clause_set, random_formula, random_model,
    random_propositional, seeded_rng, DynamicKind, GeneratorSpec, SearchSpec, Verdict,
};
use epiforget::transform::{
    build_action_model, forget_clauses, forget_dependent, forget_multiclause, product_update,
};
use epiforget::translate::{equivalence_check, translate};
use epiforget::{
    clausal_form, classify_prop, prime_implicates_oracle, Atom, Clause, ClauseSet, Evaluator,
    ForgettingFunctionPair, Formula, FrameClass, KripkeModel, PointedModel, PropClass,
};
use rand::Rng;

type Check = std::result::Result<(), String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f(s: &str) -> Formula {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn clause(s: &str) -> Clause {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn clauses(s: &str) -> ClauseSet {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn atoms(names: &str) -> Vec<Atom> {
    names.chars().map(|c| Atom::new(&c.to_string()).unwrap()).collect()
}

/// Worlds as `(label, true atoms)` with one-letter atom names.
fn model(worlds: &[(&str, &str)], edges: &[(&str, &str)]) -> KripkeModel {
    KripkeModel::new(
        worlds.iter().map(|(w, _)| w.to_string()),
        edges.iter().map(|(a, b)| (a.to_string(), b.to_string())),
        worlds.iter().map(|(w, v)| (w.to_string(), atoms(v))),
    )
    .unwrap()
}

fn full_relation(labels: &[&str]) -> Vec<(String, String)> {
    labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (a.to_string(), b.to_string())))
        .collect()
}

/// Exact comparison of `m` against a picture given by labels, valuations and edges.
fn matches_picture(m: &KripkeModel, worlds: &[(&str, &str)], edges: &[(String, String)]) -> Check {
    let labels: BTreeSet<&str> = m.labels().iter().map(String::as_str).collect();
    let expected: BTreeSet<&str> = worlds.iter().map(|(w, _)| *w).collect();
    ensure!(labels == expected, "worlds {labels:?}, expected {expected:?}");
    for (w, v) in worlds {
        let got: BTreeSet<Atom> = m.valuation(m.world(w).unwrap()).clone();
        let want: BTreeSet<Atom> = atoms(v).into_iter().collect();
        ensure!(got == want, "valuation of {w}: {got:?}, expected {want:?}");
    }
    let got: BTreeSet<(String, String)> = m
        .edges()
        .map(|(a, b)| (m.label(a).to_string(), m.label(b).to_string()))
        .collect();
    let want: BTreeSet<(String, String)> = edges.iter().cloned().collect();
    ensure!(got == want, "relation differs: extra {:?}, missing {:?}",
        got.difference(&want).collect::<Vec<_>>(),
        want.difference(&got).collect::<Vec<_>>());
    Ok(())
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn pointed(m: KripkeModel, at: &str) -> PointedModel {
    PointedModel::new(m, at).unwrap()
}

fn no_countermodel(formula: &str, spec: &SearchSpec, ev: &Evaluator) -> Check {
    match check_valid_bounded(&f(formula), spec, ev).map_err(|e| e.to_string())? {
        Verdict::NoCountermodelAtBound { .. } => Ok(()),
        Verdict::Countermodel(pm) => Err(format!(
            "{formula} ({}) has countermodel {:?} at {}",
            spec.frame_class,
            describe(&pm.model),
            pm.point_label()
        )),
    }
}

fn describe(m: &KripkeModel) -> String {
    let worlds: Vec<String> = (0..m.len())
        .map(|w| {
            let v: Vec<&str> = m.valuation(w).iter().map(Atom::name).collect();
            format!("{}{{{}}}", m.label(w), v.join(","))
        })
        .collect();
    let edges: Vec<String> = m
        .edges()
        .map(|(a, b)| format!("{}->{}", m.label(a), m.label(b)))
        .collect();
    format!("[{}] [{}]", worlds.join(" "), edges.join(" "))
}

fn spec(n: usize, class: FrameClass) -> SearchSpec {
    SearchSpec::new(n, atoms("pq"), class).unwrap()
}

fn sat(ev: &Evaluator, pm: &PointedModel, s: &str) -> std::result::Result<bool, String> {
    ev.sat(pm, &f(s)).map_err(|e| e.to_string())
}

fn basic_spec(depth: usize) -> GeneratorSpec {
    GeneratorSpec {
        depth,
        ..GeneratorSpec::default()
    }
}

// The clausal-form table for two atoms, and the constant cases.
fn c1() -> Check {
    let table = [
        ("p & q", "{{p},{q}}"),
        ("~(p & q)", "{{~p,~q}}"),
        ("p | q", "{{p,q}}"),
        ("~(p | q)", "{{~p},{~q}}"),
        ("p -> q", "{{~p,q}}"),
        ("~(p -> q)", "{{p},{~q}}"),
        ("p <-> q", "{{~p,q},{p,~q}}"),
        ("~(p <-> q)", "{{p,q},{~p,~q}}"),
        ("T", "{}"),
        ("F", "{{}}"),
    ];
    for (pi, expected) in table {
        let got = clausal_form(&f(pi), 20).map_err(|e| e.to_string())?;
        ensure!(got == clauses(expected), "C({pi}) = {got}, expected {expected}");
    }
    Ok(())
}

fn c2() -> Check {
    let mut rng = seeded_rng(0xC1A05E);
    let universe = atoms("abcde");
    let mut checked = 0;
    while checked < 500 {
        let pi = random_propositional(&mut rng, &universe, 4);
        let fast = clausal_form(&pi, 20).map_err(|e| e.to_string())?;
        let slow = prime_implicates_oracle(&pi).map_err(|e| e.to_string())?;
        ensure!(fast == slow, "C({pi}) = {fast}, oracle {slow}");
        checked += 1;
    }
    Ok(())
}

fn example1() -> KripkeModel {
    model(&[("w0", "p"), ("w1", "p")], &[("w0", "w0"), ("w0", "w1")])
}

fn c3(ev: &Evaluator) -> Check {
    let m = example1();
    let pm = pointed(m.clone(), "w0");
    ensure!(sat(ev, &pm, "K p")?, "K p fails initially");
    ensure!(
        clausal_form(&f("p"), 20).unwrap() == clauses("{{p}}")
            && clausal_form(&f("~p"), 20).unwrap() == clauses("{{~p}}"),
        "clausal forms of p and ~p"
    );
    let out = forget_clauses(&m, &[&clause("{p}"), &clause("{~p}")]);
    let worlds = [
        ("w0#0", "p"),
        ("w1#0", "p"),
        ("w0#1", ""),
        ("w1#1", ""),
        ("w0#2", "p"),
        ("w1#2", "p"),
    ];
    // Every copy of w0 sees every copy of w0 and w1; copies of w1 see nothing.
    let copies = ["w0#0", "w1#0", "w0#1", "w1#1", "w0#2", "w1#2"];
    let edges: Vec<(String, String)> = ["w0#0", "w0#1", "w0#2"]
        .iter()
        .flat_map(|a| copies.iter().map(move |b| (a.to_string(), b.to_string())))
        .collect();
    matches_picture(&out, &worlds, &edges)?;
    ensure!(
        sat(ev, &pm, "K p & [fw p](~(K p) & ~(K ~p))")?,
        "final verdict is false"
    );
    Ok(())
}

fn example2() -> KripkeModel {
    model(
        &[("w0", "pq"), ("w1", "q")],
        &[("w0", "w0"), ("w0", "w1"), ("w1", "w1")],
    )
}

/// The relation drawn for both outcomes of the second example, arrows transcribed
/// one by one (two-headed arrows give both directions).
fn example2_edges() -> Vec<(String, String)> {
    let one_way = [
        ("w0#1", "w0#1"), ("w0#1", "w1#1"), ("w0#1", "w1#0"), ("w0#1", "w1#2"),
        ("w0#0", "w0#0"), ("w0#0", "w1#0"), ("w0#0", "w1#1"), ("w0#0", "w1#2"),
        ("w0#2", "w0#2"), ("w0#2", "w1#2"), ("w0#2", "w1#0"), ("w0#2", "w1#1"),
        ("w1#1", "w1#1"), ("w1#0", "w1#0"), ("w1#2", "w1#2"),
    ];
    let two_way = [
        ("w0#1", "w0#0"), ("w0#1", "w0#2"), ("w0#2", "w0#0"),
        ("w1#1", "w1#0"), ("w1#1", "w1#2"), ("w1#0", "w1#2"),
    ];
    let mut edges = pairs(&one_way);
    for (a, b) in two_way {
        edges.push((a.to_string(), b.to_string()));
        edges.push((b.to_string(), a.to_string()));
    }
    edges
}

fn c4(ev: &Evaluator) -> Check {
    let m = example2();
    let pm = pointed(m.clone(), "w0");
    ensure!(clausal_form(&f("p -> q"), 20).unwrap() == clauses("{{~p,q}}"), "C(p->q)");
    ensure!(
        clausal_form(&f("~(p -> q)"), 20).unwrap() == clauses("{{p},{~q}}"),
        "C(~(p->q))"
    );
    let first = forget_clauses(&m, &[&clause("{~p,q}"), &clause("{p}")]);
    let second = forget_clauses(&m, &[&clause("{~p,q}"), &clause("{~q}")]);
    let edges = example2_edges();
    matches_picture(
        &first,
        &[("w0#0", "pq"), ("w1#0", "q"), ("w0#1", "p"), ("w1#1", "p"), ("w0#2", "q"), ("w1#2", "q")],
        &edges,
    )
    .map_err(|e| format!("first outcome: {e}"))?;
    matches_picture(
        &second,
        &[("w0#0", "pq"), ("w1#0", "q"), ("w0#1", "p"), ("w1#1", "p"), ("w0#2", "pq"), ("w1#2", "q")],
        &edges,
    )
    .map_err(|e| format!("second outcome: {e}"))?;
    let a = pointed(first.clone(), "w0#0");
    let b = pointed(second.clone(), "w0#0");
    ensure!(!bisimilar(&a, &b), "the outcomes are reported bisimilar");
    let diamond = f("<K>(~p & q & <K>(p & q))");
    ensure!(eval_basic(&first, "w0#0", &diamond).unwrap(), "diamond fails in the first outcome");
    ensure!(!eval_basic(&second, "w0#0", &diamond).unwrap(), "diamond holds in the second outcome");
    ensure!(
        !sat(ev, &pm, "[fw (p->q)] <K>(~p & q & <K>(p & q))")?,
        "overall verdict is true"
    );
    Ok(())
}

fn c5() -> Check {
    let m = example2();
    let facts = [
        ("{p}", "{~p,~q}", "<K>(~p & q & <K>(p & q))"),
        ("{q}", "{~p,~q}", "<K>(p & ~q)"),
    ];
    for (d1, d2, phi) in facts {
        let phi = f(phi);
        ensure!(!eval_basic(&m, "w0", &phi).unwrap(), "{phi} holds initially");
        let out = forget_clauses(&m, &[&clause(d1), &clause(d2)]);
        ensure!(
            eval_basic(&out, "w0#0", &phi).unwrap(),
            "{phi} fails after the {d1},{d2} outcome"
        );
    }
    Ok(())
}

fn c6(ev: &Evaluator) -> Check {
    for class in [FrameClass::K, FrameClass::Serial] {
        for pi in ["p", "(p & q)", "(p -> q)"] {
            no_countermodel(&format!("[fw {pi}](K {pi} | K ~{pi}) <-> K F"), &spec(3, class), ev)?;
        }
    }
    for pi in ["p", "(p & q)", "(p -> q)"] {
        no_countermodel(
            &format!("<fw {pi}>T & [fw {pi}](~(K {pi}) & ~(K ~{pi}))"),
            &spec(3, FrameClass::Serial),
            ev,
        )?;
    }
    Ok(())
}

fn c7(ev: &Evaluator) -> Check {
    let m = model(&[("w", "")], &[("w", "w")]);
    let pm = pointed(m.clone(), "w");
    ensure!(sat(ev, &pm, "<f (~p|~q)><f ~(~p|~q)><K>(p&~q)")?, "iterated [f] formula is false");
    ensure!(!sat(ev, &pm, "<fw (~p|~q)><K>(p&~q)")?, "[fw] formula is true");
    ensure!(
        clausal_form(&f("~p|~q"), 20).unwrap() == clauses("{{~p,~q}}")
            && clausal_form(&f("~(~p|~q)"), 20).unwrap() == clauses("{{p},{q}}"),
        "clausal forms"
    );
    let cap = ev.limits().isomorphism_worlds;
    let iso = |a: &KripkeModel, b: &KripkeModel| isomorphic(a, b, cap).unwrap().is_some();

    let two = forget_clauses(&m, &[&clause("{~p,~q}")]);
    let two_picture = KripkeModel::new(
        ["a", "b"],
        full_relation(&["a", "b"]),
        [("a".to_string(), vec![]), ("b".to_string(), atoms("pq"))],
    )
    .unwrap();
    ensure!(iso(&two, &two_picture), "2-world model differs: {}", describe(&two));

    let four = forget_clauses(&two, &[&clause("{q}")]);
    let four_picture = KripkeModel::new(
        ["a", "b", "c", "d"],
        full_relation(&["a", "b", "c", "d"]),
        [
            ("a".to_string(), vec![]),
            ("b".to_string(), atoms("pq")),
            ("c".to_string(), vec![]),
            ("d".to_string(), atoms("p")),
        ],
    )
    .unwrap();
    ensure!(iso(&four, &four_picture), "4-world model differs: {}", describe(&four));

    let three = forget_clauses(&m, &[&clause("{~p,~q}"), &clause("{q}")]);
    let three_picture = KripkeModel::new(
        ["a", "b", "c"],
        full_relation(&["a", "b", "c"]),
        [
            ("a".to_string(), vec![]),
            ("b".to_string(), atoms("pq")),
            ("c".to_string(), vec![]),
        ],
    )
    .unwrap();
    ensure!(iso(&three, &three_picture), "3-world model differs: {}", describe(&three));
    Ok(())
}

fn sample_basic(seed: u64, count: usize, depth: usize) -> Vec<Formula> {
    let mut rng = seeded_rng(seed);
    let gen = basic_spec(depth);
    (0..count).map(|_| random_formula(&mut rng, &gen)).collect()
}

fn c8(ev: &Evaluator) -> Check {
    for pi in ["p", "(p & q)"] {
        no_countermodel(&format!("K F <-> [f {pi}](K F)"), &spec(3, FrameClass::K), ev)?;
    }
    for phi in sample_basic(8, 25, 2) {
        no_countermodel(&format!("[f F]({phi}) <-> ({phi})"), &spec(3, FrameClass::K), ev)?;
    }
    Ok(())
}

fn c9(ev: &Evaluator) -> Check {
    let phis = sample_basic(9, 50, 2);
    for pi in ["p", "(p & q)"] {
        for phi in &phis {
            no_countermodel(
                &format!("(K {pi} & ({phi})) -> [f {pi}][! {pi}]({phi})"),
                &spec(3, FrameClass::K4),
                ev,
            )?;
        }
    }
    Ok(())
}

/// The shared sample for the isomorphism and copy-structure checks; frame
/// classes rotate so that every frame property is exercised.
fn random_pairs() -> Vec<(KripkeModel, ClauseSet)> {
    let mut rng = seeded_rng(10);
    let universe = atoms("pq");
    (0..200)
        .map(|i| {
            let gen = GeneratorSpec {
                min_worlds: 1,
                max_worlds: 4,
                frame_class: FrameClass::ALL[i % FrameClass::ALL.len()],
                ..GeneratorSpec::default()
            };
            let m = random_model(&mut rng, &gen).model;
            let c = random_clause_set(&mut rng, &universe, 3);
            (m, c)
        })
        .collect()
}

fn c10(ev: &Evaluator, sample: &[(KripkeModel, ClauseSet)]) -> Check {
    let cap = ev.limits().isomorphism_worlds;
    for (m, c) in sample {
        let forgot = forget_multiclause(m, c);
        let updated = product_update(m, &build_action_model(c)).map_err(|e| e.to_string())?;
        ensure!(
            isomorphic(&forgot, &updated, cap).map_err(|e| e.to_string())?.is_some(),
            "not isomorphic for C = {c} on {}",
            describe(m)
        );
        // The intended bijection (w,i) -> (w,e_i) must itself be an isomorphism.
        let target = |label: &str| -> String {
            let (w, i) = label.rsplit_once('#').unwrap();
            let i: usize = i.parse().unwrap();
            format!("{w}#e{i}")
        };
        for w in 0..forgot.len() {
            let image = updated.world(&target(forgot.label(w))).ok_or("missing image world")?;
            ensure!(forgot.valuation(w) == updated.valuation(image), "valuation of {}", forgot.label(w));
            for v in 0..forgot.len() {
                let v_image = updated.world(&target(forgot.label(v))).unwrap();
                ensure!(
                    forgot.has_edge(w, v) == updated.has_edge(image, v_image),
                    "edge {} -> {}",
                    forgot.label(w),
                    forgot.label(v)
                );
            }
        }
    }
    Ok(())
}

fn c11(sample: &[(KripkeModel, ClauseSet)]) -> Check {
    let mut rng = seeded_rng(11);
    for (m, c) in sample {
        let out = forget_multiclause(m, c);
        for (i, d) in c.iter().enumerate() {
            let disjunction = d.to_formula();
            for w in m.labels() {
                let label = format!("{w}#{}", i + 1);
                ensure!(
                    !eval_basic(&out, &label, &disjunction).unwrap(),
                    "{label} satisfies the clause {d}"
                );
            }
        }
        let before = frame_properties(m);
        let after = frame_properties(&out);
        ensure!(before.is_subset(&after), "uniform copy lost {:?}", before.difference(&after));
        if !c.is_empty() {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| -> BTreeMap<String, Clause> {
                m.labels()
                    .iter()
                    .map(|w| (w.clone(), c.clauses()[rng.gen_range(0..c.len())].clone()))
                    .collect()
            };
            let first = pick(&mut rng);
            let second = pick(&mut rng);
            let fp = ForgettingFunctionPair::new(c.clone(), c.clone(), first.clone(), second.clone());
            let dep = forget_dependent(m, &fp).map_err(|e| e.to_string())?;
            let after = frame_properties(&dep);
            ensure!(before.is_subset(&after), "dependent copy lost {:?}", before.difference(&after));
            for (copy, chosen) in [("d1", &first), ("d2", &second)] {
                for (w, d) in chosen {
                    let label = format!("{w}#{copy}");
                    ensure!(
                        !eval_basic(&dep, &label, &d.to_formula()).unwrap(),
                        "{label} satisfies its chosen clause {d}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn c12(ev: &Evaluator) -> Check {
    let gen = GeneratorSpec {
        depth: 3,
        max_dynamic: 2,
        dynamic: vec![
            DynamicKind::ForgetWhether,
            DynamicKind::Forget,
            DynamicKind::ForgetCond,
            DynamicKind::Announce,
            DynamicKind::Aux,
        ],
        argument_depth: 2,
        ..GeneratorSpec::default()
    };
    let mut rng = seeded_rng(12);
    let mut with_dynamic = 0;
    for _ in 0..200 {
        let phi = random_formula(&mut rng, &gen);
        ensure!(phi.dynamic_count() <= 2, "generator exceeded the budget: {phi}");
        with_dynamic += usize::from(phi.dynamic_count() > 0);
        let t = translate(&phi).map_err(|e| e.to_string())?;
        ensure!(t.is_basic(), "translation of {phi} is not basic: {t}");
        if let Some(pm) = equivalence_check(&phi, &t, &spec(3, FrameClass::K), ev).map_err(|e| e.to_string())? {
            return Err(format!(
                "{phi} and its translation {t} disagree at {} of {}",
                pm.point_label(),
                describe(&pm.model)
            ));
        }
    }
    ensure!(with_dynamic >= 100, "only {with_dynamic} sampled formulas are dynamic");
    Ok(())
}

fn c13(ev: &Evaluator) -> Check {
    let k3 = spec(3, FrameClass::K);
    let mut phis = sample_basic(13, 10, 2);
    phis.push(f("K p"));
    for pi in ["p", "(p & q)", "(p -> q)"] {
        for phi in &phis {
            no_countermodel(&format!("~(K {pi}) -> (({phi}) <-> [fc {pi}]({phi}))"), &k3, ev)?;
            no_countermodel(
                &format!("[fc {pi}]({phi}) <-> (~(K {pi}) & ({phi}) | K {pi} & [f {pi}]({phi}))"),
                &k3,
                ev,
            )?;
        }
    }
    let w = pointed(model(&[("w", "p")], &[("w", "w")]), "w");
    ensure!(sat(ev, &w, "~(K (p & q))")?, "K(p&q) holds");
    ensure!(sat(ev, &w, "K p")?, "K p fails");
    ensure!(clausal_form(&f("p & q"), 20).unwrap().contains(&clause("{p}")), "{{p}} not in C(p&q)");
    let copy = forget_clauses(&w.model, &[&clause("{p}")]);
    ensure!(!eval_basic(&copy, "w#0", &f("K p")).unwrap(), "K p survives the {{p}} copy");
    ensure!(!sat(ev, &w, "[f (p & q)] K p")?, "[f (p&q)] K p holds");
    ensure!(
        sat(ev, &w, "~(K (p & q)) & ~(K p <-> [f (p & q)] K p)")?,
        "the [f] vacuity instance is not refuted"
    );
    ensure!(sat(ev, &w, "K p <-> [fc (p & q)] K p")?, "the [fc] vacuity instance fails");
    Ok(())
}

fn c14(ev: &Evaluator) -> Check {
    let serial = spec(3, FrameClass::Serial);
    no_countermodel("[fs (p&q)](~(K p) & ~(K q))", &serial, ev)?;

    let weak = f("[fw (p&q)](~(K p) & ~(K q))");
    let first = find_countermodel(&weak, &serial, ev).map_err(|e| e.to_string())?;
    let first = first.ok_or("[fw] version has no serial countermodel")?;
    ensure!(
        first.model.len() == 1 && first.model.has_edge(0, 0),
        "first countermodel is not a single reflexive world: {}",
        describe(&first.model)
    );

    let pq = pointed(model(&[("w", "pq")], &[("w", "w")]), "w");
    ensure!(!ev.sat(&pq, &weak).unwrap(), "the reflexive p&q world satisfies the [fw] version");
    let outcome = forget_clauses(&pq.model, &[&clause("{q}"), &clause("{~p,~q}")]);
    ensure!(eval_basic(&outcome, "w#0", &f("K p")).unwrap(), "K p fails in the {{q}} outcome");

    let guarded = f("K (p & q) -> [fw (p&q)](~(K p) & ~(K q))");
    let found = find_countermodel(&guarded, &serial, ev).map_err(|e| e.to_string())?;
    let found = found.ok_or("guarded [fw] version has no serial countermodel")?;
    matches_picture(&found.model, &[("w0", "pq")], &pairs(&[("w0", "w0")]))
        .map_err(|e| format!("guarded search: {e}"))?;
    ensure!(found.point_label() == "w0", "point {}", found.point_label());
    Ok(())
}

fn c15(ev: &Evaluator) -> Check {
    for class in FrameClass::ALL {
        no_countermodel("K(p&q) -> [fw (p&q)](K p | K q)", &spec(3, class), ev)?;
    }
    let dependent = f("K(p&q) -> [fd (p&q)](K p | K q)");
    let found = find_countermodel(&dependent, &spec(3, FrameClass::S5), ev)
        .map_err(|e| e.to_string())?
        .ok_or("no S5 countermodel for the dependent version")?;
    matches_picture(
        &found.model,
        &[("w0", "pq"), ("w1", "pq")],
        &full_relation(&["w0", "w1"]),
    )
    .map_err(|e| format!("dependent countermodel: {e}"))?;
    ensure!(found.point_label() == "w0", "point {}", found.point_label());

    let fp = ev
        .dependent_counterexample(&found, &f("p & q"), &f("K p | K q"))
        .map_err(|e| e.to_string())?
        .ok_or("no failing function pair")?;
    ensure!(fp.first()["w0"] == clause("{p}"), "f1(w0) = {}", fp.first()["w0"]);
    ensure!(fp.first()["w1"] == clause("{q}"), "f1(w1) = {}", fp.first()["w1"]);

    let six = forget_dependent(&found.model, &fp).map_err(|e| e.to_string())?;
    let labels = ["w0#d0", "w1#d0", "w0#d1", "w1#d1", "w0#d2", "w1#d2"];
    matches_picture(
        &six,
        &[
            ("w0#d0", "pq"),
            ("w1#d0", "pq"),
            ("w0#d1", "q"),
            ("w1#d1", "p"),
            ("w0#d2", "pq"),
            ("w1#d2", "pq"),
        ],
        &full_relation(&labels),
    )
    .map_err(|e| format!("six-world model: {e}"))?;
    ensure!(!eval_basic(&six, "w0#d0", &f("K p | K q")).unwrap(), "K p | K q holds in the six-world model");

    let gen = basic_spec(2);
    let universe = atoms("pq");
    let mut rng = seeded_rng(15);
    let mut checked = 0;
    while checked < 200 {
        let pm = random_model(&mut rng, &gen);
        let pi = random_propositional(&mut rng, &universe, 2);
        if classify_prop(&pi, 20).unwrap() != PropClass::Contingent {
            continue;
        }
        let phi = random_formula(&mut rng, &gen);
        let dep = ev.sat_forget_dependent(&pm, &pi, &phi).map_err(|e| e.to_string())?;
        let uni = ev.sat_forget_whether(&pm, &pi, &phi).map_err(|e| e.to_string())?;
        ensure!(!dep || uni, "dependent holds but uniform fails: [fd {pi}] {phi} on {}", describe(&pm.model));
        checked += 1;
    }
    Ok(())
}

fn main() {
    let ev = Evaluator::default();
    let sample = random_pairs();
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("clausal forms of the table and constants", secs(1), Box::new(c1)),
        ("clausal form agrees with the oracle on 500 formulas", secs(30), Box::new(c2)),
        ("first example end to end", secs(1), Box::new(|| c3(&ev))),
        ("second example outcomes and non-bisimilarity", secs(1), Box::new(|| c4(&ev))),
        ("third example satisfaction facts", secs(1), Box::new(c5)),
        ("forgetting whether erases knowledge; serial corollary", secs(120), Box::new(|| c6(&ev))),
        ("iterated forgetting differs from forgetting whether", secs(1), Box::new(|| c7(&ev))),
        ("K F preservation and forgetting F", secs(60), Box::new(|| c8(&ev))),
        ("recovery by announcement on transitive frames", secs(300), Box::new(|| c9(&ev))),
        ("copies are isomorphic to product updates", secs(30), Box::new(|| c10(&ev, &sample))),
        ("copies falsify their clauses and keep frame properties", secs(30), Box::new(|| c11(&sample))),
        ("translation preserves truth on all small models", secs(300), Box::new(|| c12(&ev))),
        ("conditional forgetting vacuity and definability", secs(60), Box::new(|| c13(&ev))),
        ("strong forgetting on serial frames", secs(60), Box::new(|| c14(&ev))),
        ("dependent and uniform forgetting differ", secs(120), Box::new(|| c15(&ev))),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= *limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
