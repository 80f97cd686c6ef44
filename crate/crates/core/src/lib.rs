//! Forgetting propositional information in single-agent epistemic logic.
//!
//! The crate is organised bottom-up:
//!
//! * [`formula`]: atoms, literals, clauses, the modal AST, its text syntax and truth tables.
//! * [`clausal`]: canonical clausal forms (prime implicates) and a brute-force oracle.
//! * [`kripke`]: Kripke models, basic satisfaction, frame properties, bisimulation, isomorphism.
//! * [`transform`]: the model operations behind every forgetting modality, public
//!   announcements, action models and product update.
//! * [`semantics`]: satisfaction for the full language.
//! * [`translate`]: reduction of dynamic formulas to the basic modal language.
//! * [`search`]: bounded countermodel search and seeded random instances.

pub mod clausal;
pub mod error;
pub mod formula;
pub mod kripke;
pub mod search;
pub mod semantics;
mod structure;
pub mod transform;
pub mod translate;

pub use clausal::{clausal_form, clause_set_to_formula, prime_implicates_oracle, ClauseSet};
pub use error::{Error, ParseError, Result};
pub use formula::{
    atoms_of, classify_prop, parse_formula, print_formula, prop_equivalent, Atom, AuxCopy, Clause, Formula,
    Literal, Modality, PropClass,
};
pub use kripke::{FrameClass, FrameProperty, KripkeModel, PointedModel, WorldSet};
pub use semantics::{Evaluator, Outcome};
pub use transform::{ActionModel, ForgettingFunctionPair};

/// Size bounds shared by every operation that enumerates something.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Most atoms a truth table (and hence a clausal form) may range over.
    pub truth_table_atoms: usize,
    /// Most forgetting-function pairs one dependent-forgetting step may enumerate.
    pub dependent_pairs: u128,
    /// Largest model the isomorphism search accepts.
    pub isomorphism_worlds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            truth_table_atoms: 20,
            dependent_pairs: 1_000_000,
            isomorphism_worlds: 64,
        }
    }
}
