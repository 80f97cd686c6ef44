//! Rewriting dynamic formulas into the basic modal language.
//!
//! Modalities are eliminated inside-out, so every reduction below only sees a
//! basic body. Outputs are folded for `T`/`F` constants and nothing else.

use crate::clausal::ClauseSet;
use crate::error::{Error, Result};
use crate::formula::{AuxCopy, Clause, Formula, Modality};
use crate::kripke::PointedModel;
use crate::search::{find_countermodel, SearchSpec};
use crate::semantics::Evaluator;

fn is_top(f: &Formula) -> bool {
    matches!(f, Formula::Top)
}

fn not(a: Formula) -> Formula {
    match a {
        Formula::Top => Formula::bottom(),
        a if a.is_bottom() => Formula::Top,
        a => Formula::not(a),
    }
}

fn and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (a, _) if a.is_bottom() => a,
        (_, b) if b.is_bottom() => b,
        (a, b) if is_top(&a) => b,
        (a, b) if is_top(&b) => a,
        (a, b) => Formula::and(a, b),
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (a, _) if is_top(&a) => a,
        (_, b) if is_top(&b) => b,
        (a, b) if a.is_bottom() => b,
        (a, b) if b.is_bottom() => a,
        (a, b) => Formula::or(a, b),
    }
}

fn implies(a: Formula, b: Formula) -> Formula {
    if a.is_bottom() || is_top(&b) {
        Formula::Top
    } else if is_top(&a) {
        b
    } else if b.is_bottom() {
        not(a)
    } else {
        Formula::implies(a, b)
    }
}

fn iff(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (a, b) if is_top(&a) => b,
        (a, b) if is_top(&b) => a,
        (a, b) if a.is_bottom() => not(b),
        (a, b) if b.is_bottom() => not(a),
        (a, b) => Formula::iff(a, b),
    }
}

fn know(a: Formula) -> Formula {
    if is_top(&a) {
        a
    } else {
        Formula::know(a)
    }
}

fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => Formula::Top,
        Some(first) => it.fold(first, and),
    }
}

/// The reduction of `[aux D1;D2;copy] f` for basic `f`. `second` is `None` for the
/// single-clause family used by `[f π]`, whose copies are 0 and 1 only.
fn aux(first: &Clause, second: Option<&Clause>, copy: AuxCopy, f: &Formula) -> Formula {
    let go = |g: &Formula| aux(first, second, copy, g);
    match f {
        Formula::Top => Formula::Top,
        Formula::Atom(a) => {
            let clause = match copy {
                AuxCopy::Original => None,
                AuxCopy::First => Some(first),
                AuxCopy::Second => second,
            };
            match clause {
                Some(d) if d.contains_pos(a) => Formula::bottom(),
                Some(d) if d.contains_neg(a) => Formula::Top,
                _ => f.clone(),
            }
        }
        Formula::Not(a) => not(go(a)),
        Formula::And(a, b) => and(go(a), go(b)),
        Formula::Or(a, b) => or(go(a), go(b)),
        Formula::Implies(a, b) => implies(go(a), go(b)),
        Formula::Iff(a, b) => iff(go(a), go(b)),
        Formula::Know(a) => {
            let copies: &[AuxCopy] = if second.is_some() {
                &AuxCopy::ALL
            } else {
                &AuxCopy::ALL[..2]
            };
            know(conjunction(copies.iter().map(|&c| aux(first, second, c, a))))
        }
        Formula::Dynamic(..) => unreachable!("bodies are translated before reduction"),
    }
}

/// `f` relativised to `pi`: truth of the result at a `pi`-world equals truth of
/// `f` in the submodel of `pi`-worlds.
fn relativise(pi: &Formula, f: &Formula) -> Formula {
    let go = |g: &Formula| relativise(pi, g);
    match f {
        Formula::Top | Formula::Atom(_) => f.clone(),
        Formula::Not(a) => not(go(a)),
        Formula::And(a, b) => and(go(a), go(b)),
        Formula::Or(a, b) => or(go(a), go(b)),
        Formula::Implies(a, b) => implies(go(a), go(b)),
        Formula::Iff(a, b) => iff(go(a), go(b)),
        Formula::Know(a) => know(implies(pi.clone(), go(a))),
        Formula::Dynamic(..) => unreachable!("bodies are translated before reduction"),
    }
}

fn clauses(pi: &Formula) -> Result<ClauseSet> {
    crate::clausal::clausal_form(pi, crate::Limits::default().truth_table_atoms)
}

fn forget(pi: &Formula, body: &Formula) -> Result<Formula> {
    let c = clauses(pi)?;
    Ok(conjunction(
        c.iter().map(|d| aux(d, None, AuxCopy::Original, body)),
    ))
}

fn reduce(m: &Modality, body: &Formula) -> Result<Formula> {
    if let Some(pi) = m.argument() {
        if !pi.is_propositional() {
            return Err(Error::ModalArgument(pi.to_string()));
        }
    }
    Ok(match m {
        Modality::Aux {
            first,
            second,
            copy,
        } => {
            for d in [first, second] {
                if d.is_tautological() {
                    return Err(Error::TautologicalClause(d.to_string()));
                }
            }
            aux(first, Some(second), *copy, body)
        }
        Modality::ForgetWhether(pi) => {
            let c1 = clauses(pi)?;
            let c2 = clauses(&Formula::not((**pi).clone()))?;
            conjunction(c1.iter().flat_map(|d1| {
                c2.iter()
                    .map(move |d2| aux(d1, Some(d2), AuxCopy::Original, body))
            }))
        }
        Modality::Forget(pi) => forget(pi, body)?,
        Modality::ForgetCond(pi) => {
            let k = know((**pi).clone());
            or(
                and(not(k.clone()), body.clone()),
                and(k, forget(pi, body)?),
            )
        }
        Modality::Announce(pi) => implies((**pi).clone(), relativise(pi, body)),
        Modality::ForgetStrong(_) | Modality::ForgetDep(_) => {
            return Err(Error::Unsupported(format!(
                "[{}] has no reduction to the basic language",
                m.keyword()
            )))
        }
    })
}

/// An equivalent formula without dynamic modalities.
pub fn translate(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Top | Formula::Atom(_) => f.clone(),
        Formula::Not(a) => not(translate(a)?),
        Formula::And(a, b) => and(translate(a)?, translate(b)?),
        Formula::Or(a, b) => or(translate(a)?, translate(b)?),
        Formula::Implies(a, b) => implies(translate(a)?, translate(b)?),
        Formula::Iff(a, b) => iff(translate(a)?, translate(b)?),
        Formula::Know(a) => know(translate(a)?),
        Formula::Dynamic(m, body) => reduce(m, &translate(body)?)?,
    })
}

/// The first pointed model within `spec`, in search order, where `a` and `b`
/// disagree; `None` when they agree on all of them.
pub fn equivalence_check(
    a: &Formula,
    b: &Formula,
    spec: &SearchSpec,
    evaluator: &Evaluator,
) -> Result<Option<PointedModel>> {
    find_countermodel(&Formula::iff(a.clone(), b.clone()), spec, evaluator)
}
