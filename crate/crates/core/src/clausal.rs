//! Canonical clausal form: the prime implicates of a propositional formula.
//!
//! The formula is put in negation normal form, multiplied out into CNF, and the
//! clause set is then saturated under binary resolution with subsumption
//! deletion until nothing new appears. The surviving clauses are exactly the
//! minimal non-tautological consequences, restricted to the formula's own atoms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{parse::parse_clause_list, Clause, Formula, Literal, TruthTable};

/// A canonically ordered, duplicate-free set of non-tautological clauses.
///
/// Position `i` (0-based) in [`ClauseSet::clauses`] is index `i + 1` of the
/// world copies built from the set; index 0 is always the untouched copy.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseSet(Vec<Clause>);

impl ClauseSet {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Result<ClauseSet> {
        let mut v: Vec<Clause> = clauses.into_iter().collect();
        if let Some(bad) = v.iter().find(|c| c.is_tautological()) {
            return Err(Error::TautologicalClause(bad.to_string()));
        }
        v.sort();
        v.dedup();
        Ok(ClauseSet(v))
    }

    pub fn empty() -> ClauseSet {
        ClauseSet(Vec::new())
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.0.binary_search(c).is_ok()
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        ClauseSet::new(self.0.iter().chain(other.0.iter()).cloned())
            .expect("both operands are free of tautologies")
    }

    /// No clause is a subset of another.
    pub fn is_antichain(&self) -> bool {
        self.0.iter().enumerate().all(|(i, a)| {
            self.0
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    /// `⋀ ⋁ D`; empty set is `T`, the empty clause is `F`.
    pub fn to_formula(&self) -> Formula {
        clause_set_to_formula(self)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ClauseSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<ClauseSet> {
        ClauseSet::new(parse_clause_list(s)?)
    }
}

pub fn clause_set_to_formula(set: &ClauseSet) -> Formula {
    Formula::conjunction(set.iter().map(Clause::to_formula))
}

enum Nnf {
    Const(bool),
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    match f {
        Formula::Top => Nnf::Const(positive),
        Formula::Atom(a) => Nnf::Lit(Literal {
            atom: a.clone(),
            positive,
        }),
        Formula::Not(a) => nnf(a, !positive),
        Formula::And(a, b) => {
            let parts = vec![nnf(a, positive), nnf(b, positive)];
            if positive {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        Formula::Or(a, b) => {
            let parts = vec![nnf(a, positive), nnf(b, positive)];
            if positive {
                Nnf::Or(parts)
            } else {
                Nnf::And(parts)
            }
        }
        // a -> b  ==  ~a | b
        Formula::Implies(a, b) => {
            if positive {
                Nnf::Or(vec![nnf(a, false), nnf(b, true)])
            } else {
                Nnf::And(vec![nnf(a, true), nnf(b, false)])
            }
        }
        // a <-> b  ==  (~a | b) & (a | ~b);  ~(a <-> b)  ==  (a | b) & (~a | ~b)
        Formula::Iff(a, b) => {
            if positive {
                Nnf::And(vec![
                    Nnf::Or(vec![nnf(a, false), nnf(b, true)]),
                    Nnf::Or(vec![nnf(a, true), nnf(b, false)]),
                ])
            } else {
                Nnf::And(vec![
                    Nnf::Or(vec![nnf(a, true), nnf(b, true)]),
                    Nnf::Or(vec![nnf(a, false), nnf(b, false)]),
                ])
            }
        }
        Formula::Know(_) | Formula::Dynamic(..) => unreachable!("checked propositional"),
    }
}

/// Drops tautologies, duplicates and subsumed clauses.
fn reduce(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.retain(|c| !c.is_tautological());
    clauses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    clauses.dedup();
    let mut kept: Vec<Clause> = Vec::with_capacity(clauses.len());
    for c in clauses {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept
}

fn cnf(n: &Nnf) -> Vec<Clause> {
    match n {
        Nnf::Const(true) => Vec::new(),
        Nnf::Const(false) => vec![Clause::empty()],
        Nnf::Lit(l) => vec![Clause::from_literals([l.clone()])],
        Nnf::And(parts) => reduce(parts.iter().flat_map(cnf).collect()),
        Nnf::Or(parts) => {
            let mut acc = vec![Clause::empty()];
            for p in parts {
                let rhs = cnf(p);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        let mut c = a.clone();
                        for l in b.literals() {
                            c.insert(l.clone());
                        }
                        if !c.is_tautological() {
                            next.push(c);
                        }
                    }
                }
                acc = reduce(next);
            }
            acc
        }
    }
}

/// The resolvent of `a` and `b` on `pivot` (which `a` contains and `b` contains negated).
fn resolvent(a: &Clause, b: &Clause, pivot: &Literal) -> Clause {
    let comp = pivot.complement();
    Clause::from_literals(
        a.literals()
            .filter(|l| *l != pivot)
            .chain(b.literals().filter(|l| **l != comp))
            .cloned(),
    )
}

fn saturate(mut clauses: Vec<Clause>) -> Vec<Clause> {
    loop {
        let mut fresh: Vec<Clause> = Vec::new();
        for (i, a) in clauses.iter().enumerate() {
            for b in &clauses[i + 1..] {
                for lit in a.literals() {
                    if !b.contains(&lit.complement()) {
                        continue;
                    }
                    let r = resolvent(a, b, lit);
                    if r.is_tautological() {
                        continue;
                    }
                    let subsumed = clauses.iter().chain(fresh.iter()).any(|c| c.is_subset(&r));
                    if !subsumed {
                        fresh.push(r);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return clauses;
        }
        clauses.extend(fresh);
        clauses = reduce(clauses);
    }
}

/// The set of minimal non-tautological clauses entailed by `pi`.
pub fn clausal_form(pi: &Formula, atom_cap: usize) -> Result<ClauseSet> {
    if !pi.is_propositional() {
        return Err(Error::ModalArgument(pi.to_string()));
    }
    let atoms = pi.atoms().len();
    if atoms > atom_cap {
        return Err(Error::AtomCap {
            atoms,
            cap: atom_cap,
        });
    }
    let clauses = saturate(cnf(&nnf(pi, true)));
    ClauseSet::new(clauses)
}

/// Largest atom count accepted by [`prime_implicates_oracle`].
pub const ORACLE_MAX_ATOMS: usize = 6;

/// Brute-force prime implicates: tries every clause over the atoms of `pi`
/// (each atom absent, positive or negative), keeps the truth-table
/// consequences and filters to the inclusion-minimal ones.
pub fn prime_implicates_oracle(pi: &Formula) -> Result<ClauseSet> {
    if !pi.is_propositional() {
        return Err(Error::ModalArgument(pi.to_string()));
    }
    let table = TruthTable::new(&[pi], ORACLE_MAX_ATOMS)?;
    let k = table.atoms().len();
    let models: Vec<u64> = (0..table.rows()).filter(|&r| table.value(0, r)).collect();

    // Each candidate is a pair of bitmasks (positive atoms, negative atoms).
    let mut consequences: Vec<(u64, u64)> = Vec::new();
    let total = 3u64.pow(k as u32);
    for code in 0..total {
        let (mut pos, mut neg, mut rest) = (0u64, 0u64, code);
        for i in 0..k {
            match rest % 3 {
                1 => pos |= 1 << i,
                2 => neg |= 1 << i,
                _ => {}
            }
            rest /= 3;
        }
        let entailed = models.iter().all(|&row| row & pos != 0 || !row & neg != 0);
        if entailed {
            consequences.push((pos, neg));
        }
    }
    let minimal = consequences.iter().filter(|&&(p, n)| {
        !consequences
            .iter()
            .any(|&(p2, n2)| (p2, n2) != (p, n) && p2 & !p == 0 && n2 & !n == 0)
    });
    let atoms = table.atoms();
    ClauseSet::new(minimal.map(|&(pos, neg)| {
        Clause::from_literals((0..k).filter_map(|i| {
            if pos >> i & 1 == 1 {
                Some(Literal::pos(atoms[i].clone()))
            } else if neg >> i & 1 == 1 {
                Some(Literal::neg(atoms[i].clone()))
            } else {
                None
            }
        }))
    }))
}
