use std::collections::BTreeMap;
use std::path::Path;

use epiforget::kripke::{bisimilar, frame_properties};
use epiforget::search::{check_valid_bounded, SearchSpec, Verdict};
use epiforget::transform::{forget_clauses, forget_dependent, forget_multiclause};
use epiforget::{
    Atom, Clause, ClauseSet, Error, Evaluator, ForgettingFunctionPair, Formula, FrameClass,
    FrameProperty, KripkeModel,
};
use serde::Serialize;
use serde_json::json;

use crate::json::{ModelJson, PairJson};
use crate::{formula_text, read_source, CliError, Format, Mode};

fn parse_formula(arg: &str) -> Result<Formula, CliError> {
    Ok(formula_text(arg)?.parse::<Formula>()?)
}

fn propositional(arg: &str) -> Result<Formula, CliError> {
    let f = parse_formula(arg)?;
    if !f.is_propositional() {
        return Err(Error::ModalArgument(f.to_string()).into());
    }
    Ok(f)
}

fn load(path: &Path) -> Result<ModelJson, CliError> {
    ModelJson::parse(&read_source(path)?, &path.display().to_string())
}

fn print_json(value: &impl Serialize) {
    out!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
}

pub fn check(model: &Path, formula: &str, point: Option<&str>, trace: bool, fmt: Format) -> Result<bool, CliError> {
    let pm = load(model)?.to_pointed(point)?;
    let f = parse_formula(formula)?;
    let ev = Evaluator::default();
    let verdict = ev.sat(&pm, &f)?;
    let outcomes = if trace { ev.outcomes(&pm, &f)? } else { Vec::new() };
    match fmt {
        Format::Text => {
            out!("{verdict}");
            for o in &outcomes {
                out!("  {}: {}", o.label, o.holds);
            }
        }
        Format::Json => {
            let mut out = json!({ "verdict": verdict, "point": pm.point_label() });
            if trace {
                out["outcomes"] = outcomes
                    .iter()
                    .map(|o| json!({ "label": o.label, "holds": o.holds }))
                    .collect();
            }
            print_json(&out);
        }
    }
    Ok(verdict)
}

pub fn clauses(formula: &str, fmt: Format) -> Result<bool, CliError> {
    let pi = propositional(formula)?;
    let c = Evaluator::default().clausal_form(&pi)?;
    match fmt {
        Format::Text => out!("{c}"),
        Format::Json => {
            let sets: Vec<Vec<String>> = c
                .iter()
                .map(|d| d.literals().map(|l| l.to_formula().to_string()).collect())
                .collect();
            print_json(&json!({ "clauses": sets, "text": c.to_string() }));
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct Labelled {
    label: String,
    model: ModelJson,
}

fn labelled(label: String, m: &KripkeModel, point: Option<String>) -> Labelled {
    Labelled {
        label,
        model: ModelJson::from_model(m, point.as_deref()),
    }
}

pub fn forget(
    model: &Path,
    mode: Mode,
    pi: &str,
    point: Option<&str>,
    enumerate: bool,
    pairs: Option<&Path>,
    cap: u128,
) -> Result<bool, CliError> {
    let file = load(model)?;
    let m = file.to_model()?;
    let point = point.map(str::to_string).or(file.point.clone());
    if let Some(p) = &point {
        m.require_world(p)?;
    }
    let uniform_point = |tag: usize| point.as_ref().map(|p| format!("{p}#{tag}"));
    let pi = propositional(pi)?;
    let ev = Evaluator::default();
    let c1 = ev.clausal_form(&pi)?;
    let c2 = ev.clausal_form(&Formula::not(pi.clone()))?;
    let mut out = Vec::new();
    match mode {
        Mode::Fw => {
            for d1 in &c1 {
                for d2 in &c2 {
                    let result = forget_clauses(&m, &[d1, d2]);
                    out.push(labelled(format!("D1={d1} D2={d2}"), &result, uniform_point(0)));
                }
            }
            if out.is_empty() {
                eprintln!("note: {pi} is not contingent, so [fw {pi}] has no outcomes and holds vacuously");
            }
        }
        Mode::F => {
            for d in &c1 {
                out.push(labelled(format!("D={d}"), &forget_clauses(&m, &[d]), uniform_point(0)));
            }
            if out.is_empty() {
                eprintln!("note: C({pi}) is empty, so [f {pi}] has no outcomes and holds vacuously");
            }
        }
        Mode::Fs => {
            let all = c1.union(&c2);
            out.push(labelled(format!("C={all}"), &forget_multiclause(&m, &all), uniform_point(0)));
        }
        Mode::Fd => {
            if c1.is_empty() || c2.is_empty() {
                return Err(Error::NonContingent(pi.to_string()).into());
            }
            let dep_point = || point.as_ref().map(|p| format!("{p}#d0"));
            let fps = match (pairs, enumerate) {
                (Some(path), _) => {
                    let pair = PairJson::parse(&read_source(path)?, &path.display().to_string())?;
                    vec![pair.to_pair(&c1, &c2)?]
                }
                (None, true) => all_pairs(&m, &c1, &c2, cap)?,
                (None, false) => {
                    return Err(CliError::Input("fd needs --pairs FILE or --enumerate".into()));
                }
            };
            for fp in &fps {
                let result = forget_dependent(&m, fp)?;
                out.push(labelled(pair_label(fp), &result, dep_point()));
            }
        }
    }
    print_json(&out);
    Ok(true)
}

fn pair_label(fp: &ForgettingFunctionPair) -> String {
    let show = |map: &BTreeMap<String, Clause>| {
        map.iter()
            .map(|(w, d)| format!("{w}->{d}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("f1=[{}] f2=[{}]", show(fp.first()), show(fp.second()))
}

/// Every pair in order: f1's values before f2's, earlier worlds most significant.
fn all_pairs(m: &KripkeModel, c1: &ClauseSet, c2: &ClauseSet, cap: u128) -> Result<Vec<ForgettingFunctionPair>, CliError> {
    let n = m.len();
    let count = (c1.len() as u128)
        .checked_pow(n as u32)
        .and_then(|a| (c2.len() as u128).checked_pow(n as u32).and_then(|b| a.checked_mul(b)))
        .unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::Cap {
            what: "forgetting function pairs",
            requested: count,
            cap,
        }
        .into());
    }
    let bases: Vec<usize> = (0..2 * n).map(|i| if i < n { c1.len() } else { c2.len() }).collect();
    let mut digits = vec![0usize; 2 * n];
    let mut out = Vec::with_capacity(count as usize);
    loop {
        let map = |offset: usize, set: &ClauseSet| -> BTreeMap<String, Clause> {
            (0..n)
                .map(|w| (m.label(w).to_string(), set.clauses()[digits[offset + w]].clone()))
                .collect()
        };
        out.push(ForgettingFunctionPair::new(c1.clone(), c2.clone(), map(0, c1), map(n, c2)));
        let Some(i) = (0..2 * n).rev().find(|&i| digits[i] + 1 < bases[i]) else {
            return Ok(out);
        };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

pub fn translate(formula: &str, fmt: Format) -> Result<bool, CliError> {
    let f = parse_formula(formula)?;
    let t = epiforget::translate::translate(&f)?;
    match fmt {
        Format::Text => out!("{t}"),
        Format::Json => print_json(&json!({ "input": f.to_string(), "translation": t.to_string() })),
    }
    Ok(true)
}

pub fn valid(formula: &str, worlds: usize, atoms: &[String], class: &str, cap: u128, fmt: Format) -> Result<bool, CliError> {
    let f = parse_formula(formula)?;
    let class: FrameClass = class.parse()?;
    let universe: Vec<Atom> = if atoms.is_empty() {
        let mut a: Vec<Atom> = f.atoms().into_iter().collect();
        if a.is_empty() {
            a.push(Atom::new("p")?);
        }
        a
    } else {
        atoms.iter().map(|a| Atom::new(a)).collect::<epiforget::Result<_>>()?
    };
    let spec = SearchSpec::new(worlds, universe, class)?.with_cap(cap);
    let verdict = check_valid_bounded(&f, &spec, &Evaluator::default())?;
    match (&verdict, fmt) {
        (Verdict::NoCountermodelAtBound { pointed_models }, Format::Json) => {
            print_json(&json!({ "verdict": verdict.label(), "pointed_models": pointed_models.to_string() }))
        }
        (Verdict::NoCountermodelAtBound { .. }, Format::Text) => out!("{}", verdict.label()),
        (Verdict::Countermodel(pm), Format::Json) => print_json(&json!({
            "verdict": verdict.label(),
            "model": ModelJson::from_model(&pm.model, Some(pm.point_label())),
        })),
        (Verdict::Countermodel(pm), Format::Text) => {
            print_json(&ModelJson::from_model(&pm.model, Some(pm.point_label())))
        }
    }
    Ok(verdict.countermodel().is_none())
}

pub fn bisim(
    first: &Path,
    second: &Path,
    first_point: Option<&str>,
    second_point: Option<&str>,
    fmt: Format,
) -> Result<bool, CliError> {
    let a = load(first)?.to_pointed(first_point)?;
    let b = load(second)?.to_pointed(second_point)?;
    let same = bisimilar(&a, &b);
    let word = if same { "bisimilar" } else { "not-bisimilar" };
    match fmt {
        Format::Text => out!("{word}"),
        Format::Json => print_json(&json!({ "verdict": word })),
    }
    Ok(same)
}

pub fn frame(model: &Path, fmt: Format) -> Result<bool, CliError> {
    let m = load(model)?.to_model()?;
    let props = frame_properties(&m);
    let classes: Vec<&str> = FrameClass::ALL
        .into_iter()
        .filter(|c| c.admits(&m))
        .map(FrameClass::name)
        .collect();
    match fmt {
        Format::Text => {
            for p in FrameProperty::ALL {
                out!("{}: {}", p.name(), props.contains(&p));
            }
            out!("classes: {}", classes.join(" "));
        }
        Format::Json => {
            let holds: Vec<&str> = props.iter().map(|p| p.name()).collect();
            print_json(&json!({ "properties": holds, "classes": classes }));
        }
    }
    Ok(true)
}
