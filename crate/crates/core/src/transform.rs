//! Model constructions: the clause-falsifying copies behind every forgetting
//! modality, public announcement, action models and product update.
//!
//! Copies are laid out copy-major: copy `c` of world `w` has index `c * |W| + w`,
//! so copy 0 occupies the same indices as the input model.

use std::collections::{BTreeMap, BTreeSet};

use crate::clausal::ClauseSet;
use crate::error::{Error, Result};
use crate::formula::{Atom, Clause, Formula};
use crate::kripke::{extension, KripkeModel};

/// Applies the literal rule to one valuation: positive literals of `clause`
/// become false and negative ones become true.
fn falsify(valuation: &BTreeSet<Atom>, clause: &Clause) -> BTreeSet<Atom> {
    let mut v = valuation.clone();
    for lit in clause.literals() {
        if lit.positive {
            v.remove(&lit.atom);
        } else {
            v.insert(lit.atom.clone());
        }
    }
    v
}

/// `tags.len()` copies of `m`, related wherever the originals are, with copy
/// `c` of world `w` labelled `"{w}#{tags[c]}"` and valued by `value(c, w)`.
fn layered(
    m: &KripkeModel,
    tags: &[String],
    value: impl Fn(usize, usize) -> BTreeSet<Atom>,
) -> KripkeModel {
    let n = m.len();
    let copies = tags.len();
    let mut labels = Vec::with_capacity(n * copies);
    let mut succ = Vec::with_capacity(n * copies);
    let mut val = Vec::with_capacity(n * copies);
    for (c, tag) in tags.iter().enumerate() {
        for w in 0..n {
            labels.push(format!("{}#{}", m.label(w), tag));
            succ.push(
                (0..copies)
                    .flat_map(|d| m.successors(w).iter().map(move |&v| d * n + v))
                    .collect(),
            );
            val.push(value(c, w));
        }
    }
    KripkeModel::from_parts(labels, succ, val)
}

/// The multi-clause copy model for `clauses` taken in the given order: copy
/// `i ≥ 1` falsifies `clauses[i - 1]`, copy 0 is untouched.
pub fn forget_clauses(m: &KripkeModel, clauses: &[&Clause]) -> KripkeModel {
    let tags: Vec<String> = (0..=clauses.len()).map(|i| i.to_string()).collect();
    layered(m, &tags, |c, w| match c {
        0 => m.valuation(w).clone(),
        i => falsify(m.valuation(w), clauses[i - 1]),
    })
}

/// [`forget_clauses`] with the set's canonical order fixing the indices.
pub fn forget_multiclause(m: &KripkeModel, c: &ClauseSet) -> KripkeModel {
    let clauses: Vec<&Clause> = c.iter().collect();
    forget_clauses(m, &clauses)
}

/// Two per-world clause choices, each drawn from its declared clause set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgettingFunctionPair {
    first_range: ClauseSet,
    second_range: ClauseSet,
    first: BTreeMap<String, Clause>,
    second: BTreeMap<String, Clause>,
}

impl ForgettingFunctionPair {
    pub fn new(
        first_range: ClauseSet,
        second_range: ClauseSet,
        first: BTreeMap<String, Clause>,
        second: BTreeMap<String, Clause>,
    ) -> ForgettingFunctionPair {
        ForgettingFunctionPair {
            first_range,
            second_range,
            first,
            second,
        }
    }

    /// The pair mapping every world of `m` to `d1` and `d2` respectively.
    pub fn constant(m: &KripkeModel, d1: &Clause, d2: &Clause) -> Result<ForgettingFunctionPair> {
        let range = |d: &Clause| ClauseSet::new([d.clone()]);
        let all = |d: &Clause| m.labels().iter().map(|l| (l.clone(), d.clone())).collect();
        Ok(ForgettingFunctionPair::new(range(d1)?, range(d2)?, all(d1), all(d2)))
    }

    pub fn first_range(&self) -> &ClauseSet {
        &self.first_range
    }

    pub fn second_range(&self) -> &ClauseSet {
        &self.second_range
    }

    pub fn first(&self) -> &BTreeMap<String, Clause> {
        &self.first
    }

    pub fn second(&self) -> &BTreeMap<String, Clause> {
        &self.second
    }

    /// Checks totality on `m`'s worlds and that every value lies in its range.
    pub fn validate(&self, m: &KripkeModel) -> Result<()> {
        for (name, map, range) in [
            ("f1", &self.first, &self.first_range),
            ("f2", &self.second, &self.second_range),
        ] {
            for label in m.labels() {
                let Some(d) = map.get(label) else {
                    return Err(Error::InvalidFunctionPair(format!(
                        "{name} has no value for world {label:?}"
                    )));
                };
                if !range.contains(d) {
                    return Err(Error::InvalidFunctionPair(format!(
                        "{name}({label}) = {d} is not in {range}"
                    )));
                }
            }
            if let Some(extra) = map.keys().find(|k| m.world(k).is_none()) {
                return Err(Error::InvalidFunctionPair(format!(
                    "{name} mentions undeclared world {extra:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Three copies tagged `d0`, `d1`, `d2`; copy `i ≥ 1` of `w` falsifies `f_i(w)`.
pub fn forget_dependent(m: &KripkeModel, fp: &ForgettingFunctionPair) -> Result<KripkeModel> {
    fp.validate(m)?;
    let tags = ["d0", "d1", "d2"].map(String::from);
    Ok(layered(m, &tags, |c, w| {
        let v = m.valuation(w);
        match c {
            0 => v.clone(),
            1 => falsify(v, &fp.first[m.label(w)]),
            _ => falsify(v, &fp.second[m.label(w)]),
        }
    }))
}

/// Restriction to the worlds satisfying the propositional `pi`; `None` when none do.
pub fn announce(m: &KripkeModel, pi: &Formula) -> Result<Option<KripkeModel>> {
    if !pi.is_propositional() {
        return Err(Error::ModalArgument(pi.to_string()));
    }
    let keep = extension(m, pi)?;
    Ok(m.restrict(&keep).map(|(model, _)| model))
}

/// An action model with basic-modal preconditions and postconditions.
/// Atoms without an explicit postcondition keep their value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionModel {
    actions: Vec<String>,
    succ: Vec<BTreeSet<usize>>,
    pre: Vec<Formula>,
    post: Vec<BTreeMap<Atom, Formula>>,
}

impl ActionModel {
    pub fn new(
        actions: Vec<String>,
        relation: impl IntoIterator<Item = (String, String)>,
        mut pre: BTreeMap<String, Formula>,
        mut post: BTreeMap<String, BTreeMap<Atom, Formula>>,
    ) -> Result<ActionModel> {
        if actions.is_empty() {
            return Err(Error::InvalidModel("an action model needs an action".into()));
        }
        let find = |a: &str| {
            actions
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::InvalidModel(format!("undeclared action {a:?}")))
        };
        if actions.iter().collect::<BTreeSet<_>>().len() != actions.len() {
            return Err(Error::InvalidModel("duplicate action".into()));
        }
        let mut succ = vec![BTreeSet::new(); actions.len()];
        for (a, b) in relation {
            succ[find(&a)?].insert(find(&b)?);
        }
        for key in pre.keys().chain(post.keys()) {
            find(key)?;
        }
        let pre_v = actions
            .iter()
            .map(|a| pre.remove(a).unwrap_or(Formula::Top))
            .collect();
        let post_v = actions
            .iter()
            .map(|a| post.remove(a).unwrap_or_default())
            .collect();
        Ok(ActionModel {
            actions,
            succ,
            pre: pre_v,
            post: post_v,
        })
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    pub fn precondition(&self, a: usize) -> &Formula {
        &self.pre[a]
    }

    pub fn postcondition(&self, a: usize, atom: &Atom) -> Formula {
        self.post[a]
            .get(atom)
            .cloned()
            .unwrap_or_else(|| Formula::Atom(atom.clone()))
    }

    /// Atoms with an explicit postcondition at action `a`.
    pub fn changed_atoms(&self, a: usize) -> impl Iterator<Item = &Atom> + '_ {
        self.post[a].keys()
    }
}

/// The action model `e0, e1, …` whose action `e_i` falsifies clause `i` of `c`
/// (canonical order): the relation is total, every precondition is `T`.
pub fn build_action_model(c: &ClauseSet) -> ActionModel {
    let actions: Vec<String> = (0..=c.len()).map(|i| format!("e{i}")).collect();
    let relation: Vec<(String, String)> = actions
        .iter()
        .flat_map(|a| actions.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let post = c
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let changes = d
                .literals()
                .map(|lit| {
                    let value = if lit.positive {
                        Formula::bottom()
                    } else {
                        Formula::Top
                    };
                    (lit.atom.clone(), value)
                })
                .collect();
            (actions[i + 1].clone(), changes)
        })
        .collect();
    ActionModel::new(actions, relation, BTreeMap::new(), post)
        .expect("generated action model is well formed")
}

/// The restricted product: worlds `(w, e)` with `w ⊨ Pre(e)`, labelled `"{w}#{e}"`,
/// action-major.
pub fn product_update(m: &KripkeModel, u: &ActionModel) -> Result<KripkeModel> {
    let n = m.len();
    let mut index = vec![None; n * u.actions.len()];
    let mut labels = Vec::new();
    let mut cells = Vec::new();
    for (e, name) in u.actions.iter().enumerate() {
        let pre = extension(m, u.precondition(e))?;
        for w in pre.iter() {
            index[e * n + w] = Some(labels.len());
            labels.push(format!("{}#{}", m.label(w), name));
            cells.push((w, e));
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut post_ext = Vec::with_capacity(u.actions.len());
    for e in 0..u.actions.len() {
        let mut table = Vec::new();
        for (atom, f) in &u.post[e] {
            table.push((atom.clone(), extension(m, f)?));
        }
        post_ext.push(table);
    }
    let mut succ = Vec::with_capacity(cells.len());
    let mut val = Vec::with_capacity(cells.len());
    for &(w, e) in &cells {
        let mut out = Vec::new();
        for &v in m.successors(w) {
            for &f in &u.succ[e] {
                if let Some(j) = index[f * n + v] {
                    out.push(j);
                }
            }
        }
        succ.push(out);
        let mut atoms: BTreeSet<Atom> = m
            .valuation(w)
            .iter()
            .filter(|a| !u.post[e].contains_key(*a))
            .cloned()
            .collect();
        for (atom, ext) in &post_ext[e] {
            if ext.contains(w) {
                atoms.insert(atom.clone());
            }
        }
        val.push(atoms);
    }
    Ok(KripkeModel::from_parts(labels, succ, val))
}
