//! Abstract syntax for lambda DCS logical forms and for the lambda calculus
//! terms they convert to, together with values and evaluation environments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A knowledge-base individual.
///
/// Entities order before numbers; entities compare lexicographically and
/// numbers numerically, which is also the CLI's display order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Entity(String),
    Number(i64),
}

impl Value {
    pub fn entity(name: impl Into<String>) -> Value {
        Value::Entity(name.into())
    }

    pub fn is_entity(&self) -> bool {
        matches!(self, Value::Entity(_))
    }

    pub fn as_number(&self) -> Option<i64> {
        match self {
            Value::Number(n) => Some(*n),
            Value::Entity(_) => None,
        }
    }

    /// Whether `name` is acceptable as an entity id: non-empty, no tab or
    /// newline, and not starting with a digit or minus sign.
    pub fn valid_entity_id(name: &str) -> bool {
        match name.chars().next() {
            None => false,
            Some(c) if c.is_ascii_digit() || c == '-' => false,
            Some(_) => !name.contains(['\t', '\n', '\r']),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Entity(name) => f.write_str(name),
            Value::Number(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggregateOp {
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuperlativeOp {
    Argmax,
    Argmin,
}

impl SuperlativeOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SuperlativeOp::Argmax => "argmax",
            SuperlativeOp::Argmin => "argmin",
        }
    }
}

/// A unary logical form: denotes a set of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UnaryForm {
    EntityLit(Value),
    Var(String),
    Join(Box<BinaryForm>, Box<UnaryForm>),
    Intersect(Box<UnaryForm>, Box<UnaryForm>),
    Union(Box<UnaryForm>, Box<UnaryForm>),
    Negate(Box<UnaryForm>),
    Aggregate(AggregateOp, Box<UnaryForm>),
    Superlative(SuperlativeOp, Box<UnaryForm>, Box<BinaryForm>),
    Mu(String, Box<UnaryForm>),
}

/// A binary logical form: denotes a set of value pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryForm {
    Property(String),
    Reverse(Box<BinaryForm>),
    Lambda(String, Box<UnaryForm>),
}

impl UnaryForm {
    pub fn entity(name: &str) -> UnaryForm {
        UnaryForm::EntityLit(Value::entity(name))
    }

    pub fn number(n: i64) -> UnaryForm {
        UnaryForm::EntityLit(Value::Number(n))
    }

    pub fn var(name: &str) -> UnaryForm {
        UnaryForm::Var(name.to_string())
    }

    pub fn join(b: BinaryForm, u: UnaryForm) -> UnaryForm {
        UnaryForm::Join(Box::new(b), Box::new(u))
    }

    pub fn and(l: UnaryForm, r: UnaryForm) -> UnaryForm {
        UnaryForm::Intersect(Box::new(l), Box::new(r))
    }

    pub fn or(l: UnaryForm, r: UnaryForm) -> UnaryForm {
        UnaryForm::Union(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(u: UnaryForm) -> UnaryForm {
        UnaryForm::Negate(Box::new(u))
    }

    pub fn count(u: UnaryForm) -> UnaryForm {
        UnaryForm::Aggregate(AggregateOp::Count, Box::new(u))
    }

    pub fn superlative(op: SuperlativeOp, u: UnaryForm, b: BinaryForm) -> UnaryForm {
        UnaryForm::Superlative(op, Box::new(u), Box::new(b))
    }

    pub fn mu(var: &str, body: UnaryForm) -> UnaryForm {
        UnaryForm::Mu(var.to_string(), Box::new(body))
    }

    /// Variables occurring free, i.e. not bound by an enclosing mu or lambda.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            UnaryForm::EntityLit(_) => {}
            UnaryForm::Var(name) => {
                if !bound.contains(&name.as_str()) {
                    out.insert(name.clone());
                }
            }
            UnaryForm::Join(b, u) => {
                b.collect_free(bound, out);
                u.collect_free(bound, out);
            }
            UnaryForm::Intersect(l, r) | UnaryForm::Union(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            UnaryForm::Negate(u) | UnaryForm::Aggregate(_, u) => u.collect_free(bound, out),
            UnaryForm::Superlative(_, u, b) => {
                u.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            UnaryForm::Mu(var, body) => {
                bound.push(var);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Names bound by any mu or lambda inside this form.
    pub fn binder_names(&self) -> BTreeSet<String> {
        let mut mu = BTreeSet::new();
        let mut lam = BTreeSet::new();
        self.visit(
            &mut |u| {
                if let UnaryForm::Mu(v, _) = u {
                    mu.insert(v.clone());
                }
            },
            &mut |b| {
                if let BinaryForm::Lambda(v, _) = b {
                    lam.insert(v.clone());
                }
            },
        );
        mu.append(&mut lam);
        mu
    }

    /// Pre-order traversal over every unary and binary node.
    pub fn visit(&self, fu: &mut impl FnMut(&UnaryForm), fb: &mut impl FnMut(&BinaryForm)) {
        fu(self);
        match self {
            UnaryForm::EntityLit(_) | UnaryForm::Var(_) => {}
            UnaryForm::Join(b, u) => {
                b.visit(fu, fb);
                u.visit(fu, fb);
            }
            UnaryForm::Intersect(l, r) | UnaryForm::Union(l, r) => {
                l.visit(fu, fb);
                r.visit(fu, fb);
            }
            UnaryForm::Negate(u) | UnaryForm::Aggregate(_, u) | UnaryForm::Mu(_, u) => u.visit(fu, fb),
            UnaryForm::Superlative(_, u, b) => {
                u.visit(fu, fb);
                b.visit(fu, fb);
            }
        }
    }

    /// Short variant name, used in diagnostics and coverage counters.
    pub fn kind(&self) -> &'static str {
        match self {
            UnaryForm::EntityLit(_) => "entity",
            UnaryForm::Var(_) => "var",
            UnaryForm::Join(..) => "join",
            UnaryForm::Intersect(..) => "intersect",
            UnaryForm::Union(..) => "union",
            UnaryForm::Negate(_) => "negate",
            UnaryForm::Aggregate(..) => "count",
            UnaryForm::Superlative(..) => "superlative",
            UnaryForm::Mu(..) => "mu",
        }
    }
}

impl BinaryForm {
    pub fn property(name: &str) -> BinaryForm {
        BinaryForm::Property(name.to_string())
    }

    pub fn reverse(b: BinaryForm) -> BinaryForm {
        BinaryForm::Reverse(Box::new(b))
    }

    pub fn lambda(var: &str, body: UnaryForm) -> BinaryForm {
        BinaryForm::Lambda(var.to_string(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            BinaryForm::Property(_) => {}
            BinaryForm::Reverse(b) => b.collect_free(bound, out),
            BinaryForm::Lambda(var, body) => {
                bound.push(var);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn visit(&self, fu: &mut impl FnMut(&UnaryForm), fb: &mut impl FnMut(&BinaryForm)) {
        fb(self);
        match self {
            BinaryForm::Property(_) => {}
            BinaryForm::Reverse(b) => b.visit(fu, fb),
            BinaryForm::Lambda(_, body) => body.visit(fu, fb),
        }
    }
}

/// Lambda calculus terms: the target of the conversion from lambda DCS.
///
/// `Dom(t)` holds when `t` names an entity of the knowledge base's entity
/// domain. The conversion emits it wherever lambda DCS ranges over the
/// entity domain implicitly (complement, mu candidates, lambda bindings).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LCTerm {
    Var(String),
    Const(Value),
    Pred(String, Box<LCTerm>, Box<LCTerm>),
    Eq(Box<LCTerm>, Box<LCTerm>),
    And(Box<LCTerm>, Box<LCTerm>),
    Or(Box<LCTerm>, Box<LCTerm>),
    Not(Box<LCTerm>),
    Exists(String, Box<LCTerm>),
    Lam(String, Box<LCTerm>),
    Count(Box<LCTerm>),
    Sup(SuperlativeOp, Box<LCTerm>, Box<LCTerm>),
    In(Box<LCTerm>, Box<LCTerm>),
    Dom(Box<LCTerm>),
}

impl LCTerm {
    pub fn var(name: &str) -> LCTerm {
        LCTerm::Var(name.to_string())
    }

    pub fn entity(name: &str) -> LCTerm {
        LCTerm::Const(Value::entity(name))
    }

    pub fn pred(p: &str, a: LCTerm, b: LCTerm) -> LCTerm {
        LCTerm::Pred(p.to_string(), Box::new(a), Box::new(b))
    }

    pub fn eq(a: LCTerm, b: LCTerm) -> LCTerm {
        LCTerm::Eq(Box::new(a), Box::new(b))
    }

    pub fn and(a: LCTerm, b: LCTerm) -> LCTerm {
        LCTerm::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: LCTerm, b: LCTerm) -> LCTerm {
        LCTerm::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: LCTerm) -> LCTerm {
        LCTerm::Not(Box::new(a))
    }

    pub fn exists(v: &str, body: LCTerm) -> LCTerm {
        LCTerm::Exists(v.to_string(), Box::new(body))
    }

    pub fn lam(v: &str, body: LCTerm) -> LCTerm {
        LCTerm::Lam(v.to_string(), Box::new(body))
    }

    pub fn dom(t: LCTerm) -> LCTerm {
        LCTerm::Dom(Box::new(t))
    }

    pub fn count(set: LCTerm) -> LCTerm {
        LCTerm::Count(Box::new(set))
    }

    pub fn sup(op: SuperlativeOp, set: LCTerm, degree: LCTerm) -> LCTerm {
        LCTerm::Sup(op, Box::new(set), Box::new(degree))
    }

    pub fn is_in(elem: LCTerm, set: LCTerm) -> LCTerm {
        LCTerm::In(Box::new(elem), Box::new(set))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            LCTerm::Var(name) => {
                if !bound.contains(&name.as_str()) {
                    out.insert(name.clone());
                }
            }
            LCTerm::Const(_) => {}
            LCTerm::Exists(v, body) | LCTerm::Lam(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for child in self.children() {
                    child.collect_free(bound, out);
                }
            }
        }
    }

    /// Every variable name occurring in the term, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            LCTerm::Var(v) => {
                out.insert(v.clone());
            }
            LCTerm::Exists(v, body) | LCTerm::Lam(v, body) => {
                out.insert(v.clone());
                body.collect_all_vars(out);
            }
            _ => self.children().into_iter().for_each(|c| c.collect_all_vars(out)),
        }
    }

    pub fn children(&self) -> Vec<&LCTerm> {
        match self {
            LCTerm::Var(_) | LCTerm::Const(_) => vec![],
            LCTerm::Pred(_, a, b)
            | LCTerm::Eq(a, b)
            | LCTerm::And(a, b)
            | LCTerm::Or(a, b)
            | LCTerm::Sup(_, a, b)
            | LCTerm::In(a, b) => vec![a, b],
            LCTerm::Not(a) | LCTerm::Exists(_, a) | LCTerm::Lam(_, a) | LCTerm::Count(a) | LCTerm::Dom(a) => vec![a],
        }
    }

    /// Number of leading `Lam` binders.
    pub fn lambda_arity(&self) -> usize {
        match self {
            LCTerm::Lam(_, body) => 1 + body.lambda_arity(),
            _ => 0,
        }
    }

    /// Checks the structural typing discipline: predicate, equality and
    /// domain arguments are element terms, set arguments are one-place
    /// lambdas and superlative degrees are two-place lambdas.
    pub fn well_formed(&self) -> bool {
        fn element(t: &LCTerm) -> bool {
            matches!(t, LCTerm::Var(_) | LCTerm::Const(_))
        }
        fn formula(t: &LCTerm) -> bool {
            match t {
                LCTerm::Pred(_, a, b) => element(a) && element(b),
                LCTerm::Eq(a, b) => {
                    (element(a) || matches!(**a, LCTerm::Count(_)))
                        && (element(b) || matches!(**b, LCTerm::Count(_)))
                        && a.well_formed()
                        && b.well_formed()
                }
                LCTerm::And(a, b) | LCTerm::Or(a, b) => formula(a) && formula(b),
                LCTerm::Not(a) | LCTerm::Exists(_, a) => formula(a),
                LCTerm::In(e, s) => element(e) && matches!(**s, LCTerm::Sup(..)) && s.well_formed(),
                LCTerm::Dom(a) => element(a),
                _ => false,
            }
        }
        match self {
            LCTerm::Count(set) => set.lambda_arity() == 1 && set.well_formed(),
            LCTerm::Sup(_, set, degree) => {
                set.lambda_arity() == 1 && degree.lambda_arity() == 2 && set.well_formed() && degree.well_formed()
            }
            LCTerm::Lam(_, body) => match &**body {
                LCTerm::Lam(_, inner) => formula(inner),
                other => formula(other),
            },
            LCTerm::Var(_) | LCTerm::Const(_) => true,
            other => formula(other),
        }
    }
}

/// True iff the two terms are identical up to consistent renaming of bound
/// variables. Free variables must match by name.
pub fn alpha_eq(a: &LCTerm, b: &LCTerm) -> bool {
    fn go<'a>(a: &'a LCTerm, b: &'a LCTerm, sa: &mut Vec<&'a str>, sb: &mut Vec<&'a str>) -> bool {
        match (a, b) {
            (LCTerm::Var(x), LCTerm::Var(y)) => {
                let ix = sa.iter().rposition(|v| *v == x);
                let iy = sb.iter().rposition(|v| *v == y);
                match (ix, iy) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (LCTerm::Const(x), LCTerm::Const(y)) => x == y,
            (LCTerm::Pred(p, a1, a2), LCTerm::Pred(q, b1, b2)) => p == q && go(a1, b1, sa, sb) && go(a2, b2, sa, sb),
            (LCTerm::Eq(a1, a2), LCTerm::Eq(b1, b2))
            | (LCTerm::And(a1, a2), LCTerm::And(b1, b2))
            | (LCTerm::Or(a1, a2), LCTerm::Or(b1, b2))
            | (LCTerm::In(a1, a2), LCTerm::In(b1, b2)) => go(a1, b1, sa, sb) && go(a2, b2, sa, sb),
            (LCTerm::Sup(o1, a1, a2), LCTerm::Sup(o2, b1, b2)) => o1 == o2 && go(a1, b1, sa, sb) && go(a2, b2, sa, sb),
            (LCTerm::Not(x), LCTerm::Not(y))
            | (LCTerm::Count(x), LCTerm::Count(y))
            | (LCTerm::Dom(x), LCTerm::Dom(y)) => go(x, y, sa, sb),
            (LCTerm::Exists(v, x), LCTerm::Exists(w, y)) | (LCTerm::Lam(v, x), LCTerm::Lam(w, y)) => {
                sa.push(v);
                sb.push(w);
                let r = go(x, y, sa, sb);
                sa.pop();
                sb.pop();
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

/// Reserved words of the lambda calculus surface syntax.
pub const LC_KEYWORDS: &[&str] = &["lambda", "exists", "count", "argmax", "argmin", "in", "E"];

/// Reserved words of the lambda DCS surface syntax.
pub const DCS_KEYWORDS: &[&str] = &["mu", "lam", "count", "argmax", "argmin"];

pub(crate) fn is_plain_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == ':')
}

/// Writes an identifier, backquoting it when it is not a plain identifier
/// or collides with a keyword.
pub(crate) fn write_ident(f: &mut impl fmt::Write, name: &str, keywords: &[&str]) -> fmt::Result {
    if is_plain_ident(name) && !keywords.contains(&name) {
        f.write_str(name)
    } else {
        write!(f, "`{name}`")
    }
}

fn write_value(f: &mut impl fmt::Write, v: &Value, keywords: &[&str]) -> fmt::Result {
    match v {
        Value::Entity(name) => write_ident(f, name, keywords),
        Value::Number(n) => write!(f, "{n}"),
    }
}

pub(crate) fn write_dcs_value(f: &mut impl fmt::Write, v: &Value) -> fmt::Result {
    write_value(f, v, DCS_KEYWORDS)
}

const LEVEL_BINDER: u8 = 0;
const LEVEL_OR: u8 = 1;
const LEVEL_AND: u8 = 2;
const LEVEL_NOT: u8 = 3;
const LEVEL_ATOM: u8 = 4;

impl LCTerm {
    fn level(&self) -> u8 {
        match self {
            LCTerm::Lam(..) | LCTerm::Exists(..) => LEVEL_BINDER,
            LCTerm::Or(..) => LEVEL_OR,
            LCTerm::And(..) => LEVEL_AND,
            LCTerm::Not(_) => LEVEL_NOT,
            _ => LEVEL_ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, LEVEL_BINDER)?;
            return f.write_str(")");
        }
        match self {
            LCTerm::Var(v) => write_ident(f, v, LC_KEYWORDS),
            LCTerm::Const(c) => write_value(f, c, LC_KEYWORDS),
            LCTerm::Pred(p, a, b) => {
                write_ident(f, p, LC_KEYWORDS)?;
                f.write_str("(")?;
                a.write_at(f, LEVEL_BINDER)?;
                f.write_str(",")?;
                b.write_at(f, LEVEL_BINDER)?;
                f.write_str(")")
            }
            LCTerm::Eq(a, b) => {
                f.write_str("[")?;
                a.write_at(f, LEVEL_BINDER)?;
                f.write_str(" = ")?;
                b.write_at(f, LEVEL_BINDER)?;
                f.write_str("]")
            }
            LCTerm::And(a, b) => {
                a.write_at(f, LEVEL_NOT)?;
                f.write_str(" & ")?;
                b.write_at(f, LEVEL_AND)
            }
            LCTerm::Or(a, b) => {
                a.write_at(f, LEVEL_AND)?;
                f.write_str(" || ")?;
                b.write_at(f, LEVEL_OR)
            }
            LCTerm::Not(a) => {
                f.write_str("!")?;
                a.write_at(f, LEVEL_NOT)
            }
            LCTerm::Exists(v, body) | LCTerm::Lam(v, body) => {
                f.write_str(if matches!(self, LCTerm::Lam(..)) { "lambda " } else { "exists " })?;
                write_ident(f, v, LC_KEYWORDS)?;
                f.write_str(" . ")?;
                body.write_at(f, LEVEL_BINDER)
            }
            LCTerm::Count(set) => {
                f.write_str("count(")?;
                set.write_at(f, LEVEL_BINDER)?;
                f.write_str(")")
            }
            LCTerm::Sup(op, set, degree) => {
                write!(f, "{}(", op.keyword())?;
                set.write_at(f, LEVEL_BINDER)?;
                f.write_str(", ")?;
                degree.write_at(f, LEVEL_BINDER)?;
                f.write_str(")")
            }
            LCTerm::In(e, s) => {
                f.write_str("in(")?;
                e.write_at(f, LEVEL_BINDER)?;
                f.write_str(", ")?;
                s.write_at(f, LEVEL_BINDER)?;
                f.write_str(")")
            }
            LCTerm::Dom(t) => {
                f.write_str("E(")?;
                t.write_at(f, LEVEL_BINDER)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for LCTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, LEVEL_BINDER)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unbound variable `{0}`")]
pub struct UnboundVariable(pub String);

/// Variable bindings in force during evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env {
    bindings: BTreeMap<String, Value>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn get(&self, name: &str) -> Result<&Value, UnboundVariable> {
        self.bindings.get(name).ok_or_else(|| UnboundVariable(name.to_string()))
    }

    /// A copy of this environment with `name` bound to `value`.
    pub fn with(&self, name: &str, value: Value) -> Env {
        let mut next = self.clone();
        next.bindings.insert(name.to_string(), value);
        next
    }

    pub fn insert(&mut self, name: &str, value: Value) {
        self.bindings.insert(name.to_string(), value);
    }

    pub fn restricted_to<'a>(&self, names: impl IntoIterator<Item = &'a String>) -> Vec<(String, Value)> {
        names.into_iter().filter_map(|n| self.bindings.get(n).map(|v| (n.clone(), v.clone()))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_eq(var: &str, c: &str) -> LCTerm {
        LCTerm::lam(var, LCTerm::eq(LCTerm::var(var), LCTerm::entity(c)))
    }

    #[test]
    fn alpha_eq_renaming_and_constants() {
        assert!(alpha_eq(&x_eq("x", "Seattle"), &x_eq("y", "Seattle")));
        assert!(!alpha_eq(&x_eq("x", "Seattle"), &x_eq("x", "Portland")));
    }

    #[test]
    fn alpha_eq_chained_join_form() {
        let mk = |x: &str, y: &str| {
            LCTerm::lam(
                x,
                LCTerm::exists(
                    y,
                    LCTerm::and(
                        LCTerm::pred("Children", LCTerm::var(x), LCTerm::var(y)),
                        LCTerm::pred("PlaceOfBirth", LCTerm::var(y), LCTerm::entity("Seattle")),
                    ),
                ),
            )
        };
        assert!(alpha_eq(&mk("x", "y"), &mk("a", "b")));
        // Swapping the roles of the two binders is not a renaming.
        let swapped = LCTerm::lam(
            "x",
            LCTerm::exists(
                "y",
                LCTerm::and(
                    LCTerm::pred("Children", LCTerm::var("y"), LCTerm::var("x")),
                    LCTerm::pred("PlaceOfBirth", LCTerm::var("y"), LCTerm::entity("Seattle")),
                ),
            ),
        );
        assert!(!alpha_eq(&mk("x", "y"), &swapped));
    }

    #[test]
    fn alpha_eq_distinguishes_free_from_bound() {
        let bound = LCTerm::lam("x", LCTerm::dom(LCTerm::var("x")));
        let free = LCTerm::lam("y", LCTerm::dom(LCTerm::var("x")));
        assert!(!alpha_eq(&bound, &free));
        assert!(alpha_eq(&free, &LCTerm::lam("z", LCTerm::dom(LCTerm::var("x")))));
    }

    #[test]
    fn free_vars_of_unaries() {
        let mu = UnaryForm::mu(
            "x",
            UnaryForm::join(
                BinaryForm::property("Children"),
                UnaryForm::join(BinaryForm::property("Influenced"), UnaryForm::var("x")),
            ),
        );
        assert!(mu.free_vars().is_empty());
        let open = UnaryForm::join(BinaryForm::property("Influenced"), UnaryForm::var("x"));
        assert_eq!(open.free_vars(), BTreeSet::from(["x".to_string()]));
        assert!(UnaryForm::entity("Seattle").free_vars().is_empty());
        let lam = BinaryForm::lambda("a", UnaryForm::var("a"));
        assert!(UnaryForm::join(lam, UnaryForm::var("b")).free_vars().contains("b"));
    }

    #[test]
    fn value_ordering_puts_entities_first() {
        let mut vs = vec![Value::Number(3), Value::entity("b"), Value::Number(-1), Value::entity("a")];
        vs.sort();
        assert_eq!(vs, vec![Value::entity("a"), Value::entity("b"), Value::Number(-1), Value::Number(3)]);
    }

    #[test]
    fn entity_id_validity() {
        assert!(Value::valid_entity_id("Seattle"));
        assert!(!Value::valid_entity_id("7up"));
        assert!(!Value::valid_entity_id("-x"));
        assert!(!Value::valid_entity_id(""));
        assert!(!Value::valid_entity_id("a\tb"));
    }

    #[test]
    fn env_lookup_of_unbound_is_an_error() {
        let env = Env::new().with("x", Value::entity("Dave"));
        assert_eq!(env.get("x").unwrap(), &Value::entity("Dave"));
        assert_eq!(env.get("y"), Err(UnboundVariable("y".into())));
    }

    #[test]
    fn lc_display() {
        let t = LCTerm::lam(
            "x",
            LCTerm::exists(
                "y",
                LCTerm::and(
                    LCTerm::pred("PlacesLived", LCTerm::var("x"), LCTerm::var("y")),
                    LCTerm::pred("Location", LCTerm::var("y"), LCTerm::entity("Seattle")),
                ),
            ),
        );
        assert_eq!(t.to_string(), "lambda x . exists y . PlacesLived(x,y) & Location(y,Seattle)");
        let nested = LCTerm::and(LCTerm::or(LCTerm::dom(LCTerm::var("x")), LCTerm::dom(LCTerm::var("y"))), t.clone());
        assert_eq!(
            nested.to_string(),
            "(E(x) || E(y)) & (lambda x . exists y . PlacesLived(x,y) & Location(y,Seattle))"
        );
    }
}
