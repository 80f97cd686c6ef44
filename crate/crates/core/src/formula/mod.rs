//! Formula syntax: atoms, literals, clauses and the modal AST.
//!
//! `Or`, `Implies`, `Iff` are kept as nodes so that printing is faithful to the
//! input, but every evaluator treats them by their classical definitions. There
//! is no bottom node: `F` is read as `~T`, and diamonds (`<K>`, `<fw π>`, ...)
//! are read as `~[..]~`.

pub(crate) mod parse;
mod print;
mod truth;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use parse::{parse_clause, parse_formula};
pub use print::print_formula;
pub use truth::{classify_prop, prop_equivalent, PropClass, TruthTable};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Atom> {
        if is_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Atom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Atom> {
        Atom::new(s)
    }
}

/// An atom or its negation. Ordered by atom name, positive before negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal {
            atom,
            positive: false,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Formula::not(a)
        }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.atom
            .cmp(&other.atom)
            .then_with(|| other.positive.cmp(&self.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of literals read disjunctively. The derived order compares
/// the sorted literal sequences lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(BTreeSet<Literal>);

impl Clause {
    pub fn empty() -> Clause {
        Clause(BTreeSet::new())
    }

    pub fn from_literals(lits: impl IntoIterator<Item = Literal>) -> Clause {
        Clause(lits.into_iter().collect())
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.0.contains(lit)
    }

    pub fn contains_pos(&self, atom: &Atom) -> bool {
        self.0.contains(&Literal::pos(atom.clone()))
    }

    pub fn contains_neg(&self, atom: &Atom) -> bool {
        self.0.contains(&Literal::neg(atom.clone()))
    }

    /// Contains both `p` and `~p` for some atom.
    pub fn is_tautological(&self) -> bool {
        self.0
            .iter()
            .zip(self.0.iter().skip(1))
            .any(|(a, b)| a.atom == b.atom)
    }

    pub fn is_contingent(&self) -> bool {
        !self.is_empty() && !self.is_tautological()
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn insert(&mut self, lit: Literal) -> bool {
        self.0.insert(lit)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter().map(|l| &l.atom)
    }

    /// The disjunction of the literals; the empty clause is `F`.
    pub fn to_formula(&self) -> Formula {
        let mut it = self.0.iter();
        match it.next() {
            None => Formula::bottom(),
            Some(first) => it.fold(first.to_formula(), |acc, l| {
                Formula::or(acc, l.to_formula())
            }),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Clause {
    type Err = Error;
    fn from_str(s: &str) -> Result<Clause> {
        parse_clause(s)
    }
}

/// Which copy an auxiliary modality `[aux D1;D2;i]` looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxCopy {
    Original,
    First,
    Second,
}

impl AuxCopy {
    pub fn index(self) -> usize {
        match self {
            AuxCopy::Original => 0,
            AuxCopy::First => 1,
            AuxCopy::Second => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<AuxCopy> {
        match i {
            0 => Some(AuxCopy::Original),
            1 => Some(AuxCopy::First),
            2 => Some(AuxCopy::Second),
            _ => None,
        }
    }

    pub const ALL: [AuxCopy; 3] = [AuxCopy::Original, AuxCopy::First, AuxCopy::Second];
}

/// The bracketed (dynamic) modalities. All but `Aux` carry a propositional argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    /// `[fw π]`
    ForgetWhether(Box<Formula>),
    /// `[f π]`
    Forget(Box<Formula>),
    /// `[fc π]`
    ForgetCond(Box<Formula>),
    /// `[fs π]`
    ForgetStrong(Box<Formula>),
    /// `[fd π]`
    ForgetDep(Box<Formula>),
    /// `[! π]`
    Announce(Box<Formula>),
    /// `[aux D1;D2;i]`
    Aux {
        first: Clause,
        second: Clause,
        copy: AuxCopy,
    },
}

impl Modality {
    pub fn keyword(&self) -> &'static str {
        match self {
            Modality::ForgetWhether(_) => "fw",
            Modality::Forget(_) => "f",
            Modality::ForgetCond(_) => "fc",
            Modality::ForgetStrong(_) => "fs",
            Modality::ForgetDep(_) => "fd",
            Modality::Announce(_) => "!",
            Modality::Aux { .. } => "aux",
        }
    }

    /// The propositional argument, if this modality has one.
    pub fn argument(&self) -> Option<&Formula> {
        match self {
            Modality::ForgetWhether(p)
            | Modality::Forget(p)
            | Modality::ForgetCond(p)
            | Modality::ForgetStrong(p)
            | Modality::ForgetDep(p)
            | Modality::Announce(p) => Some(p),
            Modality::Aux { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Know(Box<Formula>),
    Dynamic(Modality, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Result<Formula> {
        Ok(Formula::Atom(Atom::new(name)?))
    }

    pub fn bottom() -> Formula {
        Formula::Not(Box::new(Formula::Top))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn know(f: Formula) -> Formula {
        Formula::Know(Box::new(f))
    }

    /// `<K> φ`, i.e. `~K ~φ`.
    pub fn possible(f: Formula) -> Formula {
        Formula::not(Formula::know(Formula::not(f)))
    }

    pub fn dynamic(m: Modality, body: Formula) -> Formula {
        Formula::Dynamic(m, Box::new(body))
    }

    /// The dual `<m> φ`, i.e. `~[m] ~φ`.
    pub fn dual(m: Modality, body: Formula) -> Formula {
        Formula::not(Formula::dynamic(m, Formula::not(body)))
    }

    pub fn forget_whether(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::ForgetWhether(Box::new(pi)), body)
    }

    pub fn forget(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::Forget(Box::new(pi)), body)
    }

    pub fn forget_cond(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::ForgetCond(Box::new(pi)), body)
    }

    pub fn forget_strong(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::ForgetStrong(Box::new(pi)), body)
    }

    pub fn forget_dep(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::ForgetDep(Box::new(pi)), body)
    }

    pub fn announce(pi: Formula, body: Formula) -> Formula {
        Formula::dynamic(Modality::Announce(Box::new(pi)), body)
    }

    pub fn aux(first: Clause, second: Clause, copy: AuxCopy, body: Formula) -> Formula {
        Formula::dynamic(
            Modality::Aux {
                first,
                second,
                copy,
            },
            body,
        )
    }

    /// Conjunction of a sequence, left-nested; empty gives `T`.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Disjunction of a sequence, left-nested; empty gives `F`.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::bottom(),
            Some(first) => it.fold(first, Formula::or),
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Not(inner) if **inner == Formula::Top)
    }

    /// No modal operators at all.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Top | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Know(_) | Formula::Dynamic(..) => false,
        }
    }

    /// Only connectives and `K`.
    pub fn is_basic(&self) -> bool {
        match self {
            Formula::Top | Formula::Atom(_) => true,
            Formula::Not(a) | Formula::Know(a) => a.is_basic(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_basic() && b.is_basic()
            }
            Formula::Dynamic(..) => false,
        }
    }

    /// Number of dynamic modality occurrences.
    pub fn dynamic_count(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 0,
            Formula::Not(a) | Formula::Know(a) => a.dynamic_count(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.dynamic_count() + b.dynamic_count()
            }
            Formula::Dynamic(_, body) => 1 + body.dynamic_count(),
        }
    }

    /// Nesting depth of `K` and dynamic modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Know(a) | Formula::Dynamic(_, a) => 1 + a.modal_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Know(a) | Formula::Dynamic(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Every atom occurring anywhere, including modality arguments and aux clauses.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Top => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(a) | Formula::Know(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Dynamic(m, body) => {
                match m {
                    Modality::Aux { first, second, .. } => {
                        out.extend(first.atoms().cloned());
                        out.extend(second.atoms().cloned());
                    }
                    other => {
                        if let Some(pi) = other.argument() {
                            pi.collect_atoms(out);
                        }
                    }
                }
                body.collect_atoms(out);
            }
        }
    }

    /// Checks that every modality argument is propositional and every aux clause
    /// is non-tautological. The parser guarantees this; hand-built trees may not.
    pub fn validate(&self) -> Result<()> {
        match self {
            Formula::Top | Formula::Atom(_) => Ok(()),
            Formula::Not(a) | Formula::Know(a) => a.validate(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.validate()?;
                b.validate()
            }
            Formula::Dynamic(m, body) => {
                match m {
                    Modality::Aux { first, second, .. } => {
                        for c in [first, second] {
                            if c.is_tautological() {
                                return Err(Error::TautologicalClause(c.to_string()));
                            }
                        }
                    }
                    other => {
                        let pi = other.argument().expect("non-aux modality has an argument");
                        if !pi.is_propositional() {
                            return Err(Error::ModalArgument(pi.to_string()));
                        }
                    }
                }
                body.validate()
            }
        }
    }
}

/// The atoms of `f` (alias kept for the operation name used across the crate).
pub fn atoms_of(f: &Formula) -> BTreeSet<Atom> {
    f.atoms()
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}
