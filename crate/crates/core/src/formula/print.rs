use std::fmt::{self, Write};

use super::{Formula, Modality};

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_prec(f: &Formula, min: u8, out: &mut impl Write) -> fmt::Result {
    let own = precedence(f);
    if own < min {
        out.write_char('(')?;
        write_node(f, out)?;
        out.write_char(')')
    } else {
        write_node(f, out)
    }
}

fn write_header(m: &Modality, out: &mut impl Write) -> fmt::Result {
    out.write_str(m.keyword())?;
    match m {
        Modality::Aux {
            first,
            second,
            copy,
        } => write!(out, " {first};{second};{}", copy.index()),
        other => {
            out.write_char(' ')?;
            let arg = other.argument().expect("non-aux modality has an argument");
            write_prec(arg, UNARY, out)
        }
    }
}

fn write_node(f: &Formula, out: &mut impl Write) -> fmt::Result {
    match f {
        Formula::Top => out.write_str("T"),
        Formula::Atom(a) => out.write_str(a.name()),
        Formula::Not(inner) => match &**inner {
            Formula::Top => out.write_str("F"),
            Formula::Know(body) => match &**body {
                Formula::Not(dual_body) => {
                    out.write_str("<K> ")?;
                    write_prec(dual_body, UNARY, out)
                }
                _ => {
                    out.write_char('~')?;
                    write_prec(inner, UNARY, out)
                }
            },
            Formula::Dynamic(m, body) => match &**body {
                Formula::Not(dual_body) => {
                    out.write_char('<')?;
                    write_header(m, out)?;
                    out.write_str("> ")?;
                    write_prec(dual_body, UNARY, out)
                }
                _ => {
                    out.write_char('~')?;
                    write_prec(inner, UNARY, out)
                }
            },
            _ => {
                out.write_char('~')?;
                write_prec(inner, UNARY, out)
            }
        },
        Formula::And(a, b) => binary(a, " & ", b, AND, false, out),
        Formula::Or(a, b) => binary(a, " | ", b, OR, false, out),
        Formula::Implies(a, b) => binary(a, " -> ", b, IMPLIES, true, out),
        Formula::Iff(a, b) => binary(a, " <-> ", b, IFF, false, out),
        Formula::Know(body) => {
            out.write_str("K ")?;
            write_prec(body, UNARY, out)
        }
        Formula::Dynamic(m, body) => {
            out.write_char('[')?;
            write_header(m, out)?;
            out.write_str("] ")?;
            write_prec(body, UNARY, out)
        }
    }
}

fn binary(
    a: &Formula,
    op: &str,
    b: &Formula,
    prec: u8,
    right_assoc: bool,
    out: &mut impl Write,
) -> fmt::Result {
    let (lmin, rmin) = if right_assoc {
        (prec + 1, prec)
    } else {
        (prec, prec + 1)
    };
    write_prec(a, lmin, out)?;
    out.write_str(op)?;
    write_prec(b, rmin, out)
}

/// Canonical text; reading it back gives the same tree.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(self, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_clause, AuxCopy};
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s).unwrap()
    }

    #[test]
    fn printing_examples() {
        assert_eq!(Formula::know(atom("p")).to_string(), "K p");
        let fw = Formula::forget_whether(Formula::and(atom("p"), atom("q")), Formula::Top);
        assert_eq!(fw.to_string(), "[fw (p & q)] T");
        let aux = Formula::aux(
            parse_clause("{p}").unwrap(),
            parse_clause("{~q}").unwrap(),
            AuxCopy::First,
            atom("p"),
        );
        assert_eq!(aux.to_string(), "[aux {p};{~q};1] p");
    }

    #[test]
    fn parenthesisation() {
        let cases = [
            "p & (q | r)",
            "(p -> q) -> r",
            "p -> q -> r",
            "(p <-> q) & r",
            "~(p & q)",
            "K (p | q)",
            "<K> ~p",
            "<fw p> <K> (p & ~q)",
            "~~p",
            "~F",
            "p <-> q <-> r",
            "p <-> (q <-> r)",
        ];
        for c in cases {
            let f: Formula = c.parse().unwrap();
            assert_eq!(f.to_string(), c);
        }
    }

    #[test]
    fn redundant_parens_dropped() {
        let f: Formula = "((p & q) & r)".parse().unwrap();
        assert_eq!(f.to_string(), "p & q & r");
        let f: Formula = "[fw (p -> q)] ~(K p)".parse().unwrap();
        assert_eq!(f.to_string(), "[fw (p -> q)] ~K p");
    }
}
