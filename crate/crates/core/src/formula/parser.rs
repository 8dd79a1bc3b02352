//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! impl     := or ("->" impl)?
//! or       := and ("|" and)*
//! and      := temporal ("&" temporal)*
//! temporal := unary (("U" | "R") temporal)?
//! unary    := ("~" | "o" | "[]" | "<>") unary | primary
//! primary  := atom | "#t" | "#f" | "(" impl ")"
//! ```

use super::{is_atom_name, Atom, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Top,
    Bot,
    Not,
    Next,
    Always,
    Eventually,
    Until,
    Release,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(a) => format!("atom `{a}`"),
            Tok::Top => "`#t`".into(),
            Tok::Bot => "`#f`".into(),
            Tok::Not => "`~`".into(),
            Tok::Next => "`o`".into(),
            Tok::Always => "`[]`".into(),
            Tok::Eventually => "`<>`".into(),
            Tok::Until => "`U`".into(),
            Tok::Release => "`R`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match c {
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'U' => {
                i += 1;
                Tok::Until
            }
            b'R' => {
                i += 1;
                Tok::Release
            }
            b'-' if two == Some(b"->") => {
                i += 2;
                Tok::Arrow
            }
            b'[' if two == Some(b"[]") => {
                i += 2;
                Tok::Always
            }
            b'<' if two == Some(b"<>") => {
                i += 2;
                Tok::Eventually
            }
            b'#' if two == Some(b"#t") => {
                i += 2;
                Tok::Top
            }
            b'#' if two == Some(b"#f") => {
                i += 2;
                Tok::Bot
            }
            b'a'..=b'z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                if word == "o" {
                    Tok::Next
                } else {
                    debug_assert!(is_atom_name(word));
                    Tok::Atom(word.to_string())
                }
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or(' ');
                return Err(Error::Syntax {
                    offset: start,
                    expected: vec!["a token".into()],
                    found: format!("`{found}`"),
                });
            }
        };
        // `#t`/`#f` must not run into an identifier, e.g. `#tx`.
        if matches!(tok, Tok::Top | Tok::Bot)
            && i < bytes.len()
            && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
        {
            return Err(Error::Syntax {
                offset: start,
                expected: vec!["`#t`".into(), "`#f`".into()],
                found: format!("`{}`", &text[start..=i]),
            });
        }
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (tok, offset) = &self.toks[self.pos];
        Error::Syntax {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.temporal()?);
        }
        Ok(acc)
    }

    fn temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.bump();
                Ok(Formula::until(lhs, self.temporal()?))
            }
            Tok::Release => {
                self.bump();
                Ok(Formula::release(lhs, self.temporal()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Always => {
                self.bump();
                Ok(Formula::always(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Formula::eventually(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Atom(name) => {
                self.bump();
                Ok(Formula::Atom(Atom::new(&name)?))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`->`", "`|`", "`&`", "`U`", "`R`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&[
                "atom", "`#t`", "`#f`", "`(`", "`~`", "`o`", "`[]`", "`<>`",
            ])),
        }
    }
}

/// Parses a formula into core form.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let phi = p.implication()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["end of input", "`->`", "`|`", "`&`", "`U`", "`R`"]));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn desugaring_examples() {
        assert_eq!(
            parse("p -> ~q").unwrap(),
            Formula::Implies(Box::new(p()), Box::new(Formula::Implies(Box::new(q()), Box::new(Formula::Bot))))
        );
        assert_eq!(parse("[] p").unwrap(), Formula::Release(Box::new(Formula::Bot), Box::new(p())));
        assert_eq!(
            parse("<> p").unwrap(),
            Formula::Until(
                Box::new(Formula::Implies(Box::new(Formula::Bot), Box::new(Formula::Bot))),
                Box::new(p())
            )
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("p & q | p -> q").unwrap(),
            Formula::implies(Formula::or(Formula::and(p(), q()), p()), q())
        );
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            Formula::implies(p(), Formula::implies(q(), p()))
        );
        assert_eq!(
            parse("p U q U p").unwrap(),
            Formula::until(p(), Formula::until(q(), p()))
        );
        assert_eq!(
            parse("o p U q").unwrap(),
            Formula::until(Formula::next(p()), q())
        );
        assert_eq!(
            parse("p U q & p R q").unwrap(),
            Formula::and(Formula::until(p(), q()), Formula::release(p(), q()))
        );
        assert_eq!(parse("  op  ").unwrap(), Formula::atom("op"));
        assert_eq!(parse("o(p)").unwrap(), Formula::next(p()));
        assert_eq!(parse("#t").unwrap(), Formula::top());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("p & ") {
            Err(Error::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 4);
                assert!(expected.iter().any(|e| e == "atom"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse("(p | q") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("p $ q"), Err(Error::Syntax { offset: 2, .. })));
        assert!(parse("p q").is_err());
        assert!(parse("#tp").is_err());
        assert!(parse("P").is_err());
    }
}
