use super::{Atom, AuxCopy, Clause, Formula, Literal, Modality};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Top,
    Bottom,
    Know,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Lt,
    Gt,
    LBrace,
    RBrace,
    Semi,
    Comma,
    Bang,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::End => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Top => "T",
            Tok::Bottom => "F",
            Tok::Know => "K",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Bang => "!",
            Tok::Ident(_) | Tok::Num(_) | Tok::End => "",
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'a'..=b'z' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i]
                    .parse()
                    .map_err(|_| ParseError::new(start, "number too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'T' => Tok::Top,
            b'F' => Tok::Bottom,
            b'K' => Tok::Know,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b';' => Tok::Semi,
            b',' => Tok::Comma,
            b'!' => Tok::Bang,
            b'>' => Tok::Gt,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DArrow
            }
            b'<' => Tok::Lt,
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

enum Header {
    Argument(&'static str, Formula),
    Aux(Clause, Clause, AuxCopy),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", t.text())))
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            self.offset(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::Top => Ok(Formula::Top),
            Tok::Bottom => Ok(Formula::bottom()),
            Tok::Ident(name) => Ok(Formula::Atom(Atom::new(&name)?)),
            Tok::Tilde => Ok(Formula::not(self.unary()?)),
            Tok::Know => Ok(Formula::know(self.unary()?)),
            Tok::LParen => {
                let inner = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBrack => {
                let header = self.header()?;
                self.expect(Tok::RBrack)?;
                let body = self.unary()?;
                Ok(Formula::dynamic(header.into_modality(), body))
            }
            Tok::Lt => {
                if self.eat(&Tok::Know) {
                    self.expect(Tok::Gt)?;
                    let body = self.unary()?;
                    return Ok(Formula::possible(body));
                }
                let header = self.header()?;
                self.expect(Tok::Gt)?;
                let body = self.unary()?;
                Ok(Formula::dual(header.into_modality(), body))
            }
            other => {
                Err(ParseError::new(
                    at,
                    format!("expected a formula, found {}", other.describe()),
                )
                .into())
            }
        }
    }

    fn header(&mut self) -> Result<Header> {
        let kw: &'static str = match self.peek().clone() {
            Tok::Bang => "!",
            Tok::Ident(s) => match s.as_str() {
                "fw" => "fw",
                "f" => "f",
                "fc" => "fc",
                "fs" => "fs",
                "fd" => "fd",
                "aux" => "aux",
                _ => return Err(self.unexpected("a modality keyword (fw, f, fc, fs, fd, !, aux)").into()),
            },
            _ => return Err(self.unexpected("a modality keyword (fw, f, fc, fs, fd, !, aux)").into()),
        };
        self.bump();
        if kw == "aux" {
            let first = self.clause()?;
            self.expect(Tok::Semi)?;
            let second = self.clause()?;
            self.expect(Tok::Semi)?;
            let at = self.offset();
            let copy = match self.bump() {
                Tok::Num(n) => AuxCopy::from_index(n)
                    .ok_or_else(|| ParseError::new(at, "aux index must be 0, 1 or 2"))?,
                other => {
                    return Err(ParseError::new(
                        at,
                        format!("expected aux index, found {}", other.describe()),
                    )
                    .into())
                }
            };
            return Ok(Header::Aux(first, second, copy));
        }
        let at = self.offset();
        let arg = self.iff()?;
        if !arg.is_propositional() {
            return Err(Error::ModalArgument(format!(
                "at byte {at}: [{kw} ...] needs a propositional argument, got {arg}"
            )));
        }
        Ok(Header::Argument(kw, arg))
    }

    fn clause(&mut self) -> Result<Clause> {
        let start = self.offset();
        self.expect(Tok::LBrace)?;
        let mut clause = Clause::empty();
        if self.eat(&Tok::RBrace) {
            return Ok(clause);
        }
        loop {
            let positive = !self.eat(&Tok::Tilde);
            let at = self.offset();
            match self.bump() {
                Tok::Ident(name) => {
                    let atom = Atom::new(&name)?;
                    clause.insert(Literal { atom, positive });
                }
                other => {
                    return Err(ParseError::new(
                        at,
                        format!("expected a literal, found {}", other.describe()),
                    )
                    .into())
                }
            }
            if self.eat(&Tok::RBrace) {
                break;
            }
            self.expect(Tok::Comma)?;
        }
        if clause.is_tautological() {
            return Err(Error::TautologicalClause(format!("{clause} at byte {start}")));
        }
        Ok(clause)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

impl Header {
    fn into_modality(self) -> Modality {
        match self {
            Header::Aux(first, second, copy) => Modality::Aux {
                first,
                second,
                copy,
            },
            Header::Argument(kw, arg) => {
                let arg = Box::new(arg);
                match kw {
                    "fw" => Modality::ForgetWhether(arg),
                    "f" => Modality::Forget(arg),
                    "fc" => Modality::ForgetCond(arg),
                    "fs" => Modality::ForgetStrong(arg),
                    "fd" => Modality::ForgetDep(arg),
                    "!" => Modality::Announce(arg),
                    _ => unreachable!("keyword checked in header"),
                }
            }
        }
    }
}

/// Reads a formula in the ASCII surface syntax.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.iff()?;
    p.finish()?;
    Ok(f)
}

/// Reads a clause written as `{p,~q}`. Tautological clauses are rejected.
pub fn parse_clause(text: &str) -> Result<Clause> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let c = p.clause()?;
    p.finish()?;
    Ok(c)
}

/// Reads a clause set written as `{{p},{~q}}`, returning the clauses in input order.
pub(crate) fn parse_clause_list(text: &str) -> Result<Vec<Clause>> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    p.expect(Tok::LBrace)?;
    let mut out = Vec::new();
    if !p.eat(&Tok::RBrace) {
        loop {
            out.push(p.clause()?);
            if p.eat(&Tok::RBrace) {
                break;
            }
            p.expect(Tok::Comma)?;
        }
    }
    p.finish()?;
    Ok(out)
}
