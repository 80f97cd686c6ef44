//! Satisfaction for the full language.
//!
//! Every forgetting modality evaluates its body in a model that does not depend
//! on the evaluation world, so truth is computed as whole extensions: the set
//! of worlds of a model where a formula holds. The copy-major layout of the
//! built models puts `(w, 0)` at index `w`, and `(w, i)` at `i * |W| + w`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::clausal::{clausal_form, ClauseSet};
use crate::error::{Error, Result};
use crate::formula::{Atom, AuxCopy, Clause, Formula, Modality};
use crate::kripke::{KripkeModel, PointedModel, WorldSet};
use crate::structure::{check_universe, Mask, Structure};
use crate::transform::ForgettingFunctionPair;
use crate::Limits;

#[derive(Clone, Debug)]
enum Node {
    Top,
    Atom(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Know(Box<Node>),
    /// One model per `(D1, D2)`; no pairs means the operator is vacuous.
    ForgetWhether(Vec<[Mask; 2]>, Box<Node>),
    Forget(Vec<Mask>, Box<Node>),
    ForgetCond {
        know_pi: Box<Node>,
        copies: Vec<Mask>,
        body: Box<Node>,
    },
    ForgetStrong(Vec<Mask>, Box<Node>),
    ForgetDep {
        first: Vec<Mask>,
        second: Vec<Mask>,
        body: Box<Node>,
    },
    Announce(Box<Node>, Box<Node>),
    Aux([Mask; 2], usize, Box<Node>),
}

/// A formula compiled against its atom universe, ready to evaluate on many models.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    universe: Vec<Atom>,
    root: Node,
    has_dependent: bool,
}

impl Prepared {
    pub fn universe(&self) -> &[Atom] {
        &self.universe
    }

    /// Whether evaluation enumerates forgetting-function pairs, whose number
    /// grows with the model.
    pub fn has_dependent(&self) -> bool {
        self.has_dependent
    }
}

/// One quantified case of a dynamic modality at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub label: String,
    pub holds: bool,
}

/// Evaluates formulas on models. Clausal forms are cached per argument.
#[derive(Debug, Default)]
pub struct Evaluator {
    limits: Limits,
    clauses: RwLock<HashMap<Formula, ClauseSet>>,
}

impl Evaluator {
    pub fn new(limits: Limits) -> Evaluator {
        Evaluator {
            limits,
            clauses: RwLock::new(HashMap::new()),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `C(pi)`, computed once per distinct argument.
    pub fn clausal_form(&self, pi: &Formula) -> Result<ClauseSet> {
        if let Some(c) = self.clauses.read().expect("cache lock").get(pi) {
            return Ok(c.clone());
        }
        let c = clausal_form(pi, self.limits.truth_table_atoms)?;
        self.clauses
            .write()
            .expect("cache lock")
            .insert(pi.clone(), c.clone());
        Ok(c)
    }

    pub(crate) fn prepare(&self, f: &Formula) -> Result<Prepared> {
        f.validate()?;
        let universe: Vec<Atom> = f.atoms().into_iter().collect();
        check_universe(universe.len())?;
        let mut has_dependent = false;
        let root = self.compile(f, &universe, &mut has_dependent)?;
        Ok(Prepared {
            universe,
            root,
            has_dependent,
        })
    }

    fn masks(&self, set: &ClauseSet, universe: &[Atom]) -> Vec<Mask> {
        set.iter().map(|d| Mask::falsifying(d, universe)).collect()
    }

    fn compile(&self, f: &Formula, u: &[Atom], dep: &mut bool) -> Result<Node> {
        let mut go = |g: &Formula| -> Result<Box<Node>> { Ok(Box::new(self.compile(g, u, dep)?)) };
        Ok(match f {
            Formula::Top => Node::Top,
            Formula::Atom(a) => Node::Atom(u.binary_search(a).expect("universe covers formula")),
            Formula::Not(a) => Node::Not(go(a)?),
            Formula::And(a, b) => Node::And(go(a)?, go(b)?),
            Formula::Or(a, b) => Node::Or(go(a)?, go(b)?),
            Formula::Implies(a, b) => Node::Implies(go(a)?, go(b)?),
            Formula::Iff(a, b) => Node::Iff(go(a)?, go(b)?),
            Formula::Know(a) => Node::Know(go(a)?),
            Formula::Dynamic(m, body) => {
                let body = go(body)?;
                match m {
                    Modality::ForgetWhether(pi) => {
                        let c1 = self.masks(&self.clausal_form(pi)?, u);
                        let c2 = self.masks(&self.clausal_form(&Formula::not((**pi).clone()))?, u);
                        let pairs = c1
                            .iter()
                            .flat_map(|&a| c2.iter().map(move |&b| [a, b]))
                            .collect();
                        Node::ForgetWhether(pairs, body)
                    }
                    Modality::Forget(pi) => Node::Forget(self.masks(&self.clausal_form(pi)?, u), body),
                    Modality::ForgetCond(pi) => Node::ForgetCond {
                        know_pi: Box::new(Node::Know(go(pi)?)),
                        copies: self.masks(&self.clausal_form(pi)?, u),
                        body,
                    },
                    Modality::ForgetStrong(pi) => {
                        let all = self
                            .clausal_form(pi)?
                            .union(&self.clausal_form(&Formula::not((**pi).clone()))?);
                        Node::ForgetStrong(self.masks(&all, u), body)
                    }
                    Modality::ForgetDep(pi) => {
                        let c1 = self.clausal_form(pi)?;
                        let c2 = self.clausal_form(&Formula::not((**pi).clone()))?;
                        if c1.is_empty() || c2.is_empty() {
                            return Err(Error::NonContingent(pi.to_string()));
                        }
                        *dep = true;
                        Node::ForgetDep {
                            first: self.masks(&c1, u),
                            second: self.masks(&c2, u),
                            body,
                        }
                    }
                    Modality::Announce(pi) => Node::Announce(go(pi)?, body),
                    Modality::Aux {
                        first,
                        second,
                        copy,
                    } => Node::Aux(
                        [Mask::falsifying(first, u), Mask::falsifying(second, u)],
                        copy.index(),
                        body,
                    ),
                }
            }
        })
    }

    pub(crate) fn eval(&self, s: &Structure, p: &Prepared) -> Result<WorldSet> {
        self.ext(s, &p.root)
    }

    fn ext(&self, s: &Structure, node: &Node) -> Result<WorldSet> {
        let n = s.len();
        Ok(match node {
            Node::Top => WorldSet::full(n),
            Node::Atom(bit) => s.atom_extension(*bit),
            Node::Not(a) => self.ext(s, a)?.complement(),
            Node::And(a, b) => {
                let x = self.ext(s, a)?;
                if x.is_empty() {
                    x
                } else {
                    x.intersect(&self.ext(s, b)?)
                }
            }
            Node::Or(a, b) => {
                let x = self.ext(s, a)?;
                if x.is_full() {
                    x
                } else {
                    x.union(&self.ext(s, b)?)
                }
            }
            Node::Implies(a, b) => self.ext(s, a)?.implies(&self.ext(s, b)?),
            Node::Iff(a, b) => self.ext(s, a)?.iff(&self.ext(s, b)?),
            Node::Know(a) => s.boxed(&self.ext(s, a)?),
            Node::ForgetWhether(pairs, body) => {
                let mut acc = WorldSet::full(n);
                for pair in pairs {
                    let copy = s.layered(3, |c, _| if c == 0 { Mask::IDENTITY } else { pair[c - 1] });
                    acc = acc.intersect(&self.ext(&copy, body)?.prefix(n));
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
            Node::Forget(copies, body) => self.forget_ext(s, copies, body)?,
            Node::ForgetCond {
                know_pi,
                copies,
                body,
            } => {
                let known = self.ext(s, know_pi)?;
                let plain = self.ext(s, body)?;
                let forgotten = if known.is_empty() {
                    WorldSet::full(n)
                } else {
                    self.forget_ext(s, copies, body)?
                };
                known.clone().intersect(&forgotten).union(&known.complement().intersect(&plain))
            }
            Node::ForgetStrong(masks, body) => {
                let copy = s.layered(masks.len() + 1, |c, _| if c == 0 { Mask::IDENTITY } else { masks[c - 1] });
                self.ext(&copy, body)?.prefix(n)
            }
            Node::ForgetDep {
                first,
                second,
                body,
            } => {
                let mut acc = WorldSet::full(n);
                self.for_each_pair(n, first.len(), second.len(), |f1, f2| {
                    let copy = s.layered(3, |c, w| match c {
                        0 => Mask::IDENTITY,
                        1 => first[f1[w]],
                        _ => second[f2[w]],
                    });
                    acc = acc.clone().intersect(&self.ext(&copy, body)?.prefix(n));
                    Ok(!acc.is_empty())
                })?;
                acc
            }
            Node::Announce(pi, body) => {
                let keep = self.ext(s, pi)?;
                match s.restrict(&keep) {
                    None => WorldSet::full(n),
                    Some((sub, index)) => {
                        let inner = self.ext(&sub, body)?;
                        WorldSet::from_fn(n, |w| !keep.contains(w) || inner.contains(index[w] as usize))
                    }
                }
            }
            Node::Aux(masks, copy, body) => {
                let built = s.layered(3, |c, _| if c == 0 { Mask::IDENTITY } else { masks[c - 1] });
                self.ext(&built, body)?.slice(copy * n, n)
            }
        })
    }

    fn forget_ext(&self, s: &Structure, copies: &[Mask], body: &Node) -> Result<WorldSet> {
        let n = s.len();
        let mut acc = WorldSet::full(n);
        for &mask in copies {
            let copy = s.layered(2, |c, _| if c == 0 { Mask::IDENTITY } else { mask });
            acc = acc.intersect(&self.ext(&copy, body)?.prefix(n));
            if acc.is_empty() {
                break;
            }
        }
        Ok(acc)
    }

    /// Visits every pair `(f1, f2)` of functions from `n` worlds into
    /// `0..k1` and `0..k2`, in lexicographic order of `(f1(0), …, f1(n-1), f2(0), …)`.
    /// Stops early when `visit` returns `false`.
    fn for_each_pair(
        &self,
        n: usize,
        k1: usize,
        k2: usize,
        mut visit: impl FnMut(&[usize], &[usize]) -> Result<bool>,
    ) -> Result<()> {
        let count = (k1 as u128)
            .checked_pow(n as u32)
            .and_then(|a| (k2 as u128).checked_pow(n as u32).and_then(|b| a.checked_mul(b)))
            .unwrap_or(u128::MAX);
        if count > self.limits.dependent_pairs {
            return Err(Error::Cap {
                what: "forgetting function pairs",
                requested: count,
                cap: self.limits.dependent_pairs,
            });
        }
        let bases: Vec<usize> = std::iter::repeat_n(k1, n).chain(std::iter::repeat_n(k2, n)).collect();
        let mut digits = vec![0usize; 2 * n];
        loop {
            if !visit(&digits[..n], &digits[n..])? {
                return Ok(());
            }
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < bases[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    fn structure(&self, m: &KripkeModel, p: &Prepared) -> Structure {
        Structure::from_model(m, &p.universe)
    }

    /// The worlds of `m` where `f` holds.
    pub fn extension(&self, m: &KripkeModel, f: &Formula) -> Result<WorldSet> {
        let p = self.prepare(f)?;
        self.eval(&self.structure(m, &p), &p)
    }

    pub fn sat(&self, pm: &PointedModel, f: &Formula) -> Result<bool> {
        Ok(self.extension(&pm.model, f)?.contains(pm.point))
    }

    pub fn sat_forget_whether(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::forget_whether(pi.clone(), f.clone()))
    }

    pub fn sat_forget(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::forget(pi.clone(), f.clone()))
    }

    pub fn sat_forget_conditional(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::forget_cond(pi.clone(), f.clone()))
    }

    pub fn sat_forget_strong(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::forget_strong(pi.clone(), f.clone()))
    }

    pub fn sat_forget_dependent(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::forget_dep(pi.clone(), f.clone()))
    }

    pub fn sat_announce(&self, pm: &PointedModel, pi: &Formula, f: &Formula) -> Result<bool> {
        self.sat(pm, &Formula::announce(pi.clone(), f.clone()))
    }

    pub fn sat_aux(
        &self,
        pm: &PointedModel,
        first: &Clause,
        second: &Clause,
        copy: AuxCopy,
        f: &Formula,
    ) -> Result<bool> {
        self.sat(pm, &Formula::aux(first.clone(), second.clone(), copy, f.clone()))
    }

    /// The first forgetting function pair, in enumeration order, under which
    /// `f` fails at the point of the dependent copy model.
    pub fn dependent_counterexample(
        &self,
        pm: &PointedModel,
        pi: &Formula,
        f: &Formula,
    ) -> Result<Option<ForgettingFunctionPair>> {
        let c1 = self.clausal_form(pi)?;
        let c2 = self.clausal_form(&Formula::not(pi.clone()))?;
        if c1.is_empty() || c2.is_empty() {
            return Err(Error::NonContingent(pi.to_string()));
        }
        let whole = Formula::forget_dep(pi.clone(), f.clone());
        let p = self.prepare(&whole)?;
        let Node::ForgetDep { first, second, body } = &p.root else {
            unreachable!("compiled from a dependent modality")
        };
        let m = &pm.model;
        let s = self.structure(m, &p);
        let n = m.len();
        let mut found = None;
        self.for_each_pair(n, first.len(), second.len(), |f1, f2| {
            let copy = s.layered(3, |c, w| match c {
                0 => Mask::IDENTITY,
                1 => first[f1[w]],
                _ => second[f2[w]],
            });
            if self.ext(&copy, body)?.contains(pm.point) {
                return Ok(true);
            }
            found = Some((f1.to_vec(), f2.to_vec()));
            Ok(false)
        })?;
        Ok(found.map(|(f1, f2)| {
            let map = |choice: &[usize], set: &ClauseSet| -> BTreeMap<String, Clause> {
                (0..n)
                    .map(|w| (m.label(w).to_string(), set.clauses()[choice[w]].clone()))
                    .collect()
            };
            ForgettingFunctionPair::new(c1.clone(), c2.clone(), map(&f1, &c1), map(&f2, &c2))
        }))
    }

    /// Per-case verdicts of the outermost dynamic modality of `f` at the point.
    /// Empty when `f` does not start with one.
    pub fn outcomes(&self, pm: &PointedModel, f: &Formula) -> Result<Vec<Outcome>> {
        let Formula::Dynamic(m, body) = f else {
            return Ok(Vec::new());
        };
        let body = (**body).clone();
        let outcome = |label: String, holds: bool| Outcome { label, holds };
        Ok(match m {
            Modality::ForgetWhether(pi) => {
                let c1 = self.clausal_form(pi)?;
                let c2 = self.clausal_form(&Formula::not((**pi).clone()))?;
                let mut out = Vec::new();
                for d1 in &c1 {
                    for d2 in &c2 {
                        let g = Formula::aux(d1.clone(), d2.clone(), AuxCopy::Original, body.clone());
                        out.push(outcome(format!("D1={d1} D2={d2}"), self.sat(pm, &g)?));
                    }
                }
                out
            }
            Modality::Forget(pi) | Modality::ForgetCond(pi) => {
                if matches!(m, Modality::ForgetCond(_))
                    && !self.sat(pm, &Formula::know((**pi).clone()))?
                {
                    vec![outcome("not known: unchanged".into(), self.sat(pm, &body)?)]
                } else {
                    let mut out = Vec::new();
                    for d in &self.clausal_form(pi)? {
                        let single = ClauseSet::new([d.clone()])?;
                        let g = Formula::forget(single.to_formula(), body.clone());
                        out.push(outcome(format!("D={d}"), self.sat(pm, &g)?));
                    }
                    out
                }
            }
            Modality::ForgetDep(pi) => {
                let cex = self.dependent_counterexample(pm, pi, &body)?;
                match cex {
                    None => vec![outcome("every function pair".into(), true)],
                    Some(fp) => {
                        let show = |m: &BTreeMap<String, Clause>| {
                            m.iter().map(|(w, d)| format!("{w}->{d}")).collect::<Vec<_>>().join(",")
                        };
                        vec![outcome(
                            format!("f1=[{}] f2=[{}]", show(fp.first()), show(fp.second())),
                            false,
                        )]
                    }
                }
            }
            Modality::ForgetStrong(_) | Modality::Announce(_) | Modality::Aux { .. } => {
                vec![outcome(format!("[{}]", m.keyword()), self.sat(pm, f)?)]
            }
        })
    }
}
