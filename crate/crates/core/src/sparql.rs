//! Compilation of a fragment of lambda DCS to SPARQL 1.1 `SELECT` queries.
//!
//! Each triple `(s, p, o)` of a knowledge base is read as the RDF triple
//! `:s :p :o`, numbers being integer literals. The query selects `?x` and
//! returns exactly the denotation computed by [`crate::eval`]:
//!
//! | form              | pattern                                               |
//! |-------------------|-------------------------------------------------------|
//! | `e`               | `VALUES ?x { :e }`                                    |
//! | `p.u`             | `?x :p ?v1 .` then the pattern of `u` over `?v1`      |
//! | `R[p].u`          | `?v1 :p ?x .` then the pattern of `u` over `?v1`      |
//! | `u & w`           | both patterns in one group                            |
//! | `u \| w`          | `{ .. } UNION { .. }`                                 |
//! | `u & !w`          | `FILTER NOT EXISTS { .. }`, plus an entity check      |
//! | `count(u)`        | sub-`SELECT` with `COUNT(DISTINCT ..)`                |
//! | `argmax(u, p)`    | sub-`SELECT` computing `MAX`, then an equality filter |
//!
//! Mu and lambda abstraction have no counterpart here, and a negation
//! must share a conjunction with at least one positive pattern.

use std::fmt::Write as _;

use thiserror::Error;

use crate::ast::{BinaryForm, SuperlativeOp, UnaryForm, Value};
use crate::parser::{format, format_binary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparqlError {
    #[error("unsupported construct: {0}")]
    UnsupportedConstruct(String),
}

fn unsupported<T>(what: &str, node: String) -> Result<T, SparqlError> {
    Err(SparqlError::UnsupportedConstruct(format!("{what} `{node}`")))
}

/// Compiles `u` to query text. With a prefix, a `PREFIX :` declaration is
/// emitted; without one the default prefix is left for the caller to bind.
pub fn compile_sparql(u: &UnaryForm, prefix: Option<&str>) -> Result<String, SparqlError> {
    let mut c = Compiler { next: 0, indent: 1, lines: Vec::new(), bound: Vec::new() };
    c.group(u, "?x")?;
    let mut out = String::new();
    if let Some(p) = prefix {
        writeln!(out, "PREFIX : <{}>", escape_iri(p)).unwrap();
    }
    out.push_str("SELECT DISTINCT ?x WHERE {\n");
    for line in &c.lines {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("}\n");
    Ok(out)
}

struct Compiler {
    next: usize,
    indent: usize,
    lines: Vec<String>,
    // Variables already bound by an enclosing pattern; inside `NOT EXISTS`
    // they are compared against rather than rebound.
    bound: Vec<String>,
}

impl Compiler {
    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("?v{}", self.next)
    }

    fn is_bound(&self, t: &str) -> bool {
        self.bound.iter().any(|b| b == t)
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.lines.push(format!("{}{}", "  ".repeat(self.indent), text.as_ref()));
    }

    fn block(
        &mut self,
        open: &str,
        close: &str,
        body: impl FnOnce(&mut Self) -> Result<(), SparqlError>,
    ) -> Result<(), SparqlError> {
        self.line(open);
        self.indent += 1;
        body(self)?;
        self.indent -= 1;
        self.line(close);
        Ok(())
    }

    /// Emits patterns whose solutions bind `t` to exactly the members of `u`.
    fn group(&mut self, u: &UnaryForm, t: &str) -> Result<(), SparqlError> {
        match u {
            UnaryForm::EntityLit(v) => {
                if self.is_bound(t) {
                    self.line(format!("FILTER({t} = {})", term(v)));
                } else {
                    self.line(format!("VALUES {t} {{ {} }}", term(v)));
                }
                Ok(())
            }
            UnaryForm::Var(_) => unsupported("variable", format(u)),
            UnaryForm::Join(b, inner) => self.join(b, inner, t),
            UnaryForm::Intersect(..) => {
                let mut conjuncts = Vec::new();
                flatten_intersect(u, &mut conjuncts);
                self.conjunction(u, &conjuncts, t)
            }
            UnaryForm::Negate(_) => unsupported("negation without a positive pattern to anchor it", format(u)),
            UnaryForm::Union(..) => {
                let mut branches = Vec::new();
                flatten_union(u, &mut branches);
                let last = branches.len() - 1;
                for (i, branch) in branches.into_iter().enumerate() {
                    let open = if i == 0 { "{" } else { "} UNION {" };
                    self.line(open);
                    self.indent += 1;
                    self.group(branch, t)?;
                    self.indent -= 1;
                    if i == last {
                        self.line("}");
                    }
                }
                Ok(())
            }
            UnaryForm::Aggregate(_, inner) => {
                let result = if self.is_bound(t) { self.fresh() } else { t.to_string() };
                let member = self.fresh();
                self.block("{", "}", |c| {
                    c.block(&format!("SELECT (COUNT(DISTINCT {member}) AS {result}) WHERE {{"), "}", |c| {
                        c.group(inner, &member)
                    })
                })?;
                if result != t {
                    self.line(format!("FILTER({t} = {result})"));
                }
                Ok(())
            }
            UnaryForm::Superlative(op, set, degree) => {
                let p = match &**degree {
                    BinaryForm::Property(p) => p,
                    _ => return unsupported("superlative with a non-property degree", format(u)),
                };
                self.group(set, t)?;
                let own = self.fresh();
                self.line(format!("{t} {} {own} .", name(p)));
                let best = self.fresh();
                let member = self.fresh();
                let value = self.fresh();
                let agg = match op {
                    SuperlativeOp::Argmax => "MAX",
                    SuperlativeOp::Argmin => "MIN",
                };
                self.block("{", "}", |c| {
                    c.block(&format!("SELECT ({agg}({value}) AS {best}) WHERE {{"), "}", |c| {
                        c.group(set, &member)?;
                        c.line(format!("{member} {} {value} .", name(p)));
                        Ok(())
                    })
                })?;
                self.line(format!("FILTER({own} = {best})"));
                Ok(())
            }
            UnaryForm::Mu(..) => unsupported("mu abstraction", format(u)),
        }
    }

    fn join(&mut self, b: &BinaryForm, inner: &UnaryForm, t: &str) -> Result<(), SparqlError> {
        let (p, forward) = edge(b)?;
        let (target, nested) = match inner {
            UnaryForm::EntityLit(v) => (term(v), false),
            _ => (self.fresh(), true),
        };
        if forward {
            self.line(format!("{t} {} {target} .", name(p)));
        } else {
            self.line(format!("{target} {} {t} .", name(p)));
        }
        if nested {
            self.group(inner, &target)?;
        }
        Ok(())
    }

    fn conjunction(&mut self, whole: &UnaryForm, conjuncts: &[&UnaryForm], t: &str) -> Result<(), SparqlError> {
        let (negative, positive): (Vec<&UnaryForm>, Vec<&UnaryForm>) =
            conjuncts.iter().partition(|c| matches!(c, UnaryForm::Negate(_)));
        if positive.is_empty() {
            return unsupported("negation without a positive pattern to anchor it", format(whole));
        }
        for c in &positive {
            self.group(c, t)?;
        }
        if negative.is_empty() {
            return Ok(());
        }
        // Complements are taken within the entity domain: the subjects of
        // the graph and its non-literal objects.
        if !positive.iter().any(|c| forces_entity(c)) {
            self.line(format!("FILTER(isIRI({t}))"));
            let (a, b, c, d) = (self.fresh(), self.fresh(), self.fresh(), self.fresh());
            self.block("FILTER EXISTS {", "}", |s| {
                s.line(format!("{{ {t} {a} {b} . }} UNION {{ {c} {d} {t} . }}"));
                Ok(())
            })?;
        }
        for n in negative {
            let UnaryForm::Negate(inner) = n else { unreachable!() };
            self.bound.push(t.to_string());
            let r = self.block("FILTER NOT EXISTS {", "}", |c| c.group(inner, t));
            self.bound.pop();
            r?;
        }
        Ok(())
    }
}

/// The property under a chain of reversals and whether it is read forward.
fn edge(b: &BinaryForm) -> Result<(&str, bool), SparqlError> {
    match b {
        BinaryForm::Property(p) => Ok((p, true)),
        BinaryForm::Reverse(inner) => match &**inner {
            BinaryForm::Lambda(..) => unsupported("reverse of a lambda abstraction", format_binary(b)),
            _ => edge(inner).map(|(p, fwd)| (p, !fwd)),
        },
        BinaryForm::Lambda(..) => unsupported("lambda abstraction", format_binary(b)),
    }
}

/// Whether every solution of the pattern binds the target to a subject.
fn forces_entity(u: &UnaryForm) -> bool {
    match u {
        UnaryForm::Join(b, _) => matches!(edge(b), Ok((_, true))),
        UnaryForm::Intersect(l, r) => forces_entity(l) || forces_entity(r),
        UnaryForm::Union(l, r) => forces_entity(l) && forces_entity(r),
        UnaryForm::Superlative(_, set, degree) => forces_entity(set) || matches!(**degree, BinaryForm::Property(_)),
        _ => false,
    }
}

fn flatten_intersect<'a>(u: &'a UnaryForm, out: &mut Vec<&'a UnaryForm>) {
    match u {
        UnaryForm::Intersect(l, r) => {
            flatten_intersect(l, out);
            flatten_intersect(r, out);
        }
        _ => out.push(u),
    }
}

fn flatten_union<'a>(u: &'a UnaryForm, out: &mut Vec<&'a UnaryForm>) {
    match u {
        UnaryForm::Union(l, r) => {
            flatten_union(l, out);
            flatten_union(r, out);
        }
        _ => out.push(u),
    }
}

fn term(v: &Value) -> String {
    match v {
        Value::Entity(n) => name(n),
        Value::Number(n) => n.to_string(),
    }
}

/// A prefixed name `:local`, escaping what a local name cannot carry.
fn name(local: &str) -> String {
    let mut out = String::from(":");
    let chars: Vec<char> = local.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        let last = i + 1 == chars.len();
        match ch {
            'A'..='Z' | 'a'..='z' | '0'..='9' | '_' | ':' => out.push(ch),
            '-' if i > 0 => out.push(ch),
            '.' if i > 0 && !last => out.push(ch),
            '~' | '.' | '-' | '!' | '$' | '&' | '\'' | '(' | ')' | '*' | '+' | ',' | ';' | '=' | '/' | '?' | '#'
            | '@' | '%' => {
                out.push('\\');
                out.push(ch);
            }
            _ => {
                let mut buf = [0u8; 4];
                for byte in ch.encode_utf8(&mut buf).bytes() {
                    write!(out, "%{byte:02X}").unwrap();
                }
            }
        }
    }
    out
}

fn escape_iri(iri: &str) -> String {
    let mut out = String::new();
    for ch in iri.chars() {
        if ch <= ' ' || "<>\"{}|^`\\".contains(ch) {
            let mut buf = [0u8; 4];
            for byte in ch.encode_utf8(&mut buf).bytes() {
                write!(out, "%{byte:02X}").unwrap();
            }
        } else {
            out.push(ch);
        }
    }
    out
}
