use std::fmt::Write;

use crate::ast::{write_dcs_value, write_ident, BinaryForm, UnaryForm, DCS_KEYWORDS};

const UNION: u8 = 1;
const INTER: u8 = 2;
const ATOM: u8 = 3;

fn level(u: &UnaryForm) -> u8 {
    match u {
        UnaryForm::Union(..) => UNION,
        UnaryForm::Intersect(..) => INTER,
        _ => ATOM,
    }
}

fn unary(out: &mut String, u: &UnaryForm, min: u8) {
    if level(u) < min {
        out.push('(');
        unary(out, u, UNION);
        out.push(')');
        return;
    }
    match u {
        UnaryForm::EntityLit(v) => write_dcs_value(out, v).unwrap(),
        UnaryForm::Var(name) => write_ident(out, name, DCS_KEYWORDS).unwrap(),
        UnaryForm::Join(b, u) => {
            binary(out, b);
            out.push('.');
            unary(out, u, ATOM);
        }
        UnaryForm::Intersect(l, r) => {
            unary(out, l, INTER);
            out.push_str(" & ");
            unary(out, r, ATOM);
        }
        UnaryForm::Union(l, r) => {
            unary(out, l, UNION);
            out.push_str(" | ");
            unary(out, r, INTER);
        }
        UnaryForm::Negate(u) => {
            out.push('!');
            unary(out, u, ATOM);
        }
        UnaryForm::Aggregate(_, u) => {
            out.push_str("count(");
            unary(out, u, UNION);
            out.push(')');
        }
        UnaryForm::Superlative(op, u, b) => {
            out.push_str(op.keyword());
            out.push('(');
            unary(out, u, UNION);
            out.push_str(", ");
            binary(out, b);
            out.push(')');
        }
        UnaryForm::Mu(var, body) => {
            out.push_str("(mu ");
            write_ident(out, var, DCS_KEYWORDS).unwrap();
            out.push_str(" . ");
            unary(out, body, UNION);
            out.push(')');
        }
    }
}

fn binary(out: &mut String, b: &BinaryForm) {
    match b {
        BinaryForm::Property(p) => write_ident(out, p, DCS_KEYWORDS).unwrap(),
        BinaryForm::Reverse(inner) => {
            out.push_str("R[");
            binary(out, inner);
            out.push(']');
        }
        BinaryForm::Lambda(var, body) => {
            write!(out, "(lam ").unwrap();
            write_ident(out, var, DCS_KEYWORDS).unwrap();
            out.push_str(" . ");
            unary(out, body, UNION);
            out.push(')');
        }
    }
}

/// Renders a resolved unary in the concrete syntax with the fewest
/// parentheses the precedence table allows.
pub fn format(u: &UnaryForm) -> String {
    let mut out = String::new();
    unary(&mut out, u, UNION);
    out
}

pub fn format_binary(b: &BinaryForm) -> String {
    let mut out = String::new();
    binary(&mut out, b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::SuperlativeOp;
    use crate::parser::parse;

    fn p(n: &str) -> BinaryForm {
        BinaryForm::property(n)
    }

    #[test]
    fn chained_join() {
        let u = UnaryForm::join(p("Children"), UnaryForm::join(p("PlaceOfBirth"), UnaryForm::entity("Seattle")));
        assert_eq!(format(&u), "Children.PlaceOfBirth.Seattle");
    }

    #[test]
    fn negation_inside_intersection() {
        let u = UnaryForm::and(UnaryForm::not(UnaryForm::entity("a")), UnaryForm::entity("b"));
        assert_eq!(format(&u), "!a & b");
        let u = UnaryForm::not(UnaryForm::and(UnaryForm::entity("a"), UnaryForm::entity("b")));
        assert_eq!(format(&u), "!(a & b)");
    }

    #[test]
    fn superlative() {
        let u = UnaryForm::superlative(
            SuperlativeOp::Argmax,
            UnaryForm::join(p("Type"), UnaryForm::entity("USState")),
            p("Area"),
        );
        assert_eq!(format(&u), "argmax(Type.USState, Area)");
    }

    #[test]
    fn associativity_needs_parens_on_the_right() {
        let (a, b, c) = (UnaryForm::entity("a"), UnaryForm::entity("b"), UnaryForm::entity("c"));
        let right = UnaryForm::or(a.clone(), UnaryForm::or(b.clone(), c.clone()));
        assert_eq!(format(&right), "a | (b | c)");
        let left = UnaryForm::or(UnaryForm::or(a.clone(), b.clone()), c.clone());
        assert_eq!(format(&left), "a | b | c");
        let join_of_union = UnaryForm::join(p("p"), UnaryForm::or(a, b));
        assert_eq!(format(&join_of_union), "p.(a | b)");
    }

    #[test]
    fn awkward_names_are_quoted() {
        let u = UnaryForm::join(p("fb:loc.temp"), UnaryForm::and(UnaryForm::entity("count"), UnaryForm::number(-3)));
        let text = format(&u);
        assert_eq!(text, "`fb:loc.temp`.(`count` & -3)");
        assert_eq!(parse(&text).unwrap(), u);
    }

    #[test]
    fn binders_round_trip() {
        let text = "argmax(Type.Person, R[(lam x . count(R[Children].x))]) | (mu y . Children.Influenced.y)";
        assert_eq!(format(&parse(text).unwrap()), text);
    }
}
