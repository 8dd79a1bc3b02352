use std::fmt;

use super::Formula;

const IMPL: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const TEMPORAL: u8 = 3;
const UNARY: u8 = 4;
const PRIMARY: u8 = 5;

enum Shape<'a> {
    Primary,
    Prefix(&'static str, &'a Formula),
    Binary(&'static str, &'a Formula, &'a Formula, u8, u8, u8),
}

fn shape(phi: &Formula) -> Shape<'_> {
    match phi {
        Formula::Atom(_) | Formula::Bot => Shape::Primary,
        _ if phi.is_top() => Shape::Primary,
        Formula::Implies(body, rhs) if **rhs == Formula::Bot => Shape::Prefix("~", body),
        Formula::Next(body) => Shape::Prefix("o ", body),
        Formula::Release(lhs, body) if **lhs == Formula::Bot => Shape::Prefix("[] ", body),
        Formula::Until(lhs, body) if lhs.is_top() => Shape::Prefix("<> ", body),
        Formula::Implies(l, r) => Shape::Binary("->", l, r, IMPL, OR, IMPL),
        Formula::Or(l, r) => Shape::Binary("|", l, r, OR, OR, AND),
        Formula::And(l, r) => Shape::Binary("&", l, r, AND, AND, TEMPORAL),
        Formula::Until(l, r) => Shape::Binary("U", l, r, TEMPORAL, UNARY, TEMPORAL),
        Formula::Release(l, r) => Shape::Binary("R", l, r, TEMPORAL, UNARY, TEMPORAL),
    }
}

fn level(phi: &Formula) -> u8 {
    match shape(phi) {
        Shape::Primary => PRIMARY,
        Shape::Prefix(..) => UNARY,
        Shape::Binary(_, _, _, own, _, _) => own,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if level(phi) < min {
        f.write_str("(")?;
        write_formula(f, phi)?;
        f.write_str(")")
    } else {
        write_formula(f, phi)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula) -> fmt::Result {
    match shape(phi) {
        Shape::Primary => match phi {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Bot => f.write_str("#f"),
            _ => f.write_str("#t"),
        },
        Shape::Prefix(op, body) => {
            f.write_str(op)?;
            write_at(f, body, UNARY)
        }
        Shape::Binary(op, l, r, _, lmin, rmin) => {
            write_at(f, l, lmin)?;
            write!(f, " {op} ")?;
            write_at(f, r, rmin)
        }
    }
}

/// Prints in the concrete syntax accepted by [`super::parse`], using the
/// derived-operator sugar where the core tree matches it.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;

    #[test]
    fn prints_with_sugar() {
        for (src, want) in [
            ("p -> ~q", "p -> ~q"),
            ("[]p", "[] p"),
            ("<>  p", "<> p"),
            ("(p -> q) -> p", "(p -> q) -> p"),
            ("p | (q | p)", "p | (q | p)"),
            ("(p | q) | p", "p | q | p"),
            ("~~p", "~~p"),
            ("~(p & q)", "~(p & q)"),
            ("(o p) U q", "o p U q"),
            ("o (p U q)", "o (p U q)"),
            ("(p U q) U p", "(p U q) U p"),
            ("#f R p", "[] p"),
            ("#t U p", "<> p"),
            ("#t", "#t"),
        ] {
            assert_eq!(parse(src).unwrap().to_string(), want, "source {src}");
        }
    }
}
