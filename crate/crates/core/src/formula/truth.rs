use std::collections::BTreeSet;

use super::{Atom, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropClass {
    Tautology,
    Contradiction,
    Contingent,
}

/// A propositional formula compiled against a fixed atom order.
#[derive(Clone, Debug)]
enum Compiled {
    Const(bool),
    Var(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn build(f: &Formula, atoms: &[Atom]) -> Result<Compiled> {
        let bin = |a: &Formula, b: &Formula| -> Result<(Box<Compiled>, Box<Compiled>)> {
            Ok((
                Box::new(Compiled::build(a, atoms)?),
                Box::new(Compiled::build(b, atoms)?),
            ))
        };
        Ok(match f {
            Formula::Top => Compiled::Const(true),
            Formula::Atom(a) => Compiled::Var(
                atoms
                    .binary_search(a)
                    .expect("atom universe covers the formula"),
            ),
            Formula::Not(a) => Compiled::Not(Box::new(Compiled::build(a, atoms)?)),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b)?;
                Compiled::Iff(a, b)
            }
            Formula::Know(_) | Formula::Dynamic(..) => {
                return Err(Error::ModalArgument(f.to_string()))
            }
        })
    }

    fn eval(&self, row: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(i) => row >> i & 1 == 1,
            Compiled::Not(a) => !a.eval(row),
            Compiled::And(a, b) => a.eval(row) && b.eval(row),
            Compiled::Or(a, b) => a.eval(row) || b.eval(row),
            Compiled::Implies(a, b) => !a.eval(row) || b.eval(row),
            Compiled::Iff(a, b) => a.eval(row) == b.eval(row),
        }
    }
}

/// Exhaustive truth table of one or more propositional formulas over a shared,
/// sorted atom universe. Row `r` assigns atom `i` the value of bit `i` of `r`.
#[derive(Clone, Debug)]
pub struct TruthTable {
    atoms: Vec<Atom>,
    columns: Vec<Compiled>,
}

impl TruthTable {
    pub fn new(formulas: &[&Formula], cap: usize) -> Result<TruthTable> {
        let mut universe = BTreeSet::new();
        for f in formulas {
            universe.extend(f.atoms());
        }
        TruthTable::over(universe.into_iter().collect(), formulas, cap)
    }

    /// Builds the table over an explicit universe, which must include every atom of the formulas.
    pub fn over(mut atoms: Vec<Atom>, formulas: &[&Formula], cap: usize) -> Result<TruthTable> {
        atoms.sort();
        atoms.dedup();
        if atoms.len() > cap || atoms.len() >= 64 {
            return Err(Error::AtomCap {
                atoms: atoms.len(),
                cap: cap.min(63),
            });
        }
        let columns = formulas
            .iter()
            .map(|f| Compiled::build(f, &atoms))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruthTable { atoms, columns })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.atoms.len()
    }

    pub fn value(&self, column: usize, row: u64) -> bool {
        self.columns[column].eval(row)
    }

    /// Whether atom `i` is true in row `row`.
    pub fn assigned(&self, atom_index: usize, row: u64) -> bool {
        row >> atom_index & 1 == 1
    }
}

pub fn classify_prop(pi: &Formula, cap: usize) -> Result<PropClass> {
    let table = TruthTable::new(&[pi], cap)?;
    let mut seen_true = false;
    let mut seen_false = false;
    for row in 0..table.rows() {
        if table.value(0, row) {
            seen_true = true;
        } else {
            seen_false = true;
        }
        if seen_true && seen_false {
            return Ok(PropClass::Contingent);
        }
    }
    Ok(if seen_true {
        PropClass::Tautology
    } else {
        PropClass::Contradiction
    })
}

/// Same truth table over the union of both formulas' atoms.
pub fn prop_equivalent(a: &Formula, b: &Formula, cap: usize) -> Result<bool> {
    let table = TruthTable::new(&[a, b], cap)?;
    Ok((0..table.rows()).all(|row| table.value(0, row) == table.value(1, row)))
}
