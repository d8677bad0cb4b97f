//! Conversion from lambda DCS to lambda calculus, one rule per construct,
//! and the simplification pass that brings the mechanical output into the
//! familiar compact shape (`λx.PlaceOfBirth(x, Seattle)` rather than
//! `λx.∃y.PlaceOfBirth(x, y) ∧ [y = Seattle]`).
//!
//! Every rule yields a lambda; `⟦u⟧(x)` inside a rule is realized by
//! substituting `x` for the lambda's parameter. Wherever lambda DCS ranges
//! implicitly over the entity domain (complement, mu candidates, lambda
//! bindings) the output carries an explicit `E(x)` guard.

use std::collections::BTreeSet;

use crate::ast::{BinaryForm, LCTerm, UnaryForm, Value};

/// `hint` if unused, otherwise `hint` followed by the smallest positive
/// integer suffix not in `used`.
pub fn fresh_var(hint: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(hint) {
        return hint.to_string();
    }
    (1..).map(|i| format!("{hint}{i}")).find(|c| !used.contains(c)).expect("unbounded suffix search")
}

struct Converter {
    used: BTreeSet<String>,
}

impl Converter {
    fn new() -> Converter {
        Converter { used: BTreeSet::new() }
    }

    fn fresh(&mut self, hint: &str) -> String {
        let v = fresh_var(hint, &self.used);
        self.used.insert(v.clone());
        v
    }

    fn unary(&mut self, u: &UnaryForm) -> LCTerm {
        let x = self.fresh("x");
        let vx = LCTerm::var(&x);
        let body = match u {
            // ⟦e⟧ = λx.[x = e]
            UnaryForm::EntityLit(v) => LCTerm::eq(vx, LCTerm::Const(v.clone())),
            // ⟦a⟧ = λx.[x = a]
            UnaryForm::Var(a) => LCTerm::eq(vx, LCTerm::var(a)),
            // ⟦b.u⟧ = λx.∃y.⟦b⟧(x, y) ∧ ⟦u⟧(y)
            UnaryForm::Join(b, u) => {
                let y = self.fresh("y");
                let lb = self.binary(b);
                let lu = self.unary(u);
                LCTerm::exists(&y, LCTerm::and(apply2(&lb, &vx, &LCTerm::var(&y)), apply1(&lu, &LCTerm::var(&y))))
            }
            // ⟦u1 ⊓ u2⟧ = λx.⟦u1⟧(x) ∧ ⟦u2⟧(x)
            UnaryForm::Intersect(l, r) => {
                let (ll, lr) = (self.unary(l), self.unary(r));
                LCTerm::and(apply1(&ll, &vx), apply1(&lr, &vx))
            }
            // ⟦u1 ⊔ u2⟧ = λx.⟦u1⟧(x) ∨ ⟦u2⟧(x)
            UnaryForm::Union(l, r) => {
                let (ll, lr) = (self.unary(l), self.unary(r));
                LCTerm::or(apply1(&ll, &vx), apply1(&lr, &vx))
            }
            // ⟦¬u⟧ = λx.¬⟦u⟧(x), complement within the entity domain
            UnaryForm::Negate(u) => {
                let lu = self.unary(u);
                LCTerm::and(LCTerm::dom(vx.clone()), LCTerm::not(apply1(&lu, &vx)))
            }
            // ⟦A(u)⟧ = λx.[x = A(⟦u⟧)]
            UnaryForm::Aggregate(_, u) => LCTerm::eq(vx, LCTerm::count(self.unary(u))),
            // ⟦S(u, b)⟧ = λx.[x ∈ S(⟦u⟧, ⟦b⟧)]
            UnaryForm::Superlative(op, u, b) => {
                let lu = self.unary(u);
                let lb = self.binary(b);
                LCTerm::is_in(vx, LCTerm::sup(*op, lu, lb))
            }
            // ⟦μa.u⟧ = λx.[a = x] ∧ ⟦u⟧(x), with `a` existentially tied to x
            UnaryForm::Mu(a, u) => {
                let lu = self.unary(u);
                LCTerm::and(
                    LCTerm::dom(vx.clone()),
                    LCTerm::exists(a, LCTerm::and(LCTerm::eq(LCTerm::var(a), vx.clone()), apply1(&lu, &vx))),
                )
            }
        };
        LCTerm::lam(&x, body)
    }

    fn binary(&mut self, b: &BinaryForm) -> LCTerm {
        match b {
            // ⟦p⟧ = λx.λy.p(x, y)
            BinaryForm::Property(p) => {
                let (x, y) = (self.fresh("x"), self.fresh("y"));
                LCTerm::lam(&x, LCTerm::lam(&y, LCTerm::pred(p, LCTerm::var(&x), LCTerm::var(&y))))
            }
            // ⟦R[b]⟧ = λy.λx.⟦b⟧(x, y)
            BinaryForm::Reverse(inner) => {
                let (y, x) = (self.fresh("y"), self.fresh("x"));
                let lb = self.binary(inner);
                LCTerm::lam(&y, LCTerm::lam(&x, apply2(&lb, &LCTerm::var(&x), &LCTerm::var(&y))))
            }
            // ⟦λa.u⟧ = λx.λa.⟦u⟧(x), with `a` ranging over the entity domain
            BinaryForm::Lambda(a, u) => {
                let x = self.fresh("x");
                let lu = self.unary(u);
                LCTerm::lam(&x, LCTerm::lam(a, LCTerm::and(LCTerm::dom(LCTerm::var(a)), apply1(&lu, &LCTerm::var(&x)))))
            }
        }
    }
}

// User variables and entity names are reserved so that fresh names never
// collide with them, even once printed.
fn reserve_unary(u: &UnaryForm, used: &mut BTreeSet<String>) {
    match u {
        UnaryForm::EntityLit(Value::Entity(e)) => {
            used.insert(e.clone());
        }
        UnaryForm::EntityLit(_) => {}
        UnaryForm::Var(v) => {
            used.insert(v.clone());
        }
        UnaryForm::Join(b, u) | UnaryForm::Superlative(_, u, b) => {
            reserve_binary(b, used);
            reserve_unary(u, used);
        }
        UnaryForm::Intersect(l, r) | UnaryForm::Union(l, r) => {
            reserve_unary(l, used);
            reserve_unary(r, used);
        }
        UnaryForm::Negate(u) | UnaryForm::Aggregate(_, u) => reserve_unary(u, used),
        UnaryForm::Mu(v, u) => {
            used.insert(v.clone());
            reserve_unary(u, used);
        }
    }
}

fn reserve_binary(b: &BinaryForm, used: &mut BTreeSet<String>) {
    match b {
        BinaryForm::Property(_) => {}
        BinaryForm::Reverse(b) => reserve_binary(b, used),
        BinaryForm::Lambda(v, u) => {
            used.insert(v.clone());
            reserve_unary(u, used);
        }
    }
}

/// Mechanical conversion of a resolved unary, before simplification.
pub fn to_lc_unary(u: &UnaryForm) -> LCTerm {
    let mut c = Converter::new();
    reserve_unary(u, &mut c.used);
    c.unary(u)
}

/// Mechanical conversion of a resolved binary, before simplification.
pub fn to_lc_binary(b: &BinaryForm) -> LCTerm {
    let mut c = Converter::new();
    reserve_binary(b, &mut c.used);
    c.binary(b)
}

/// Converts and simplifies.
pub fn convert(u: &UnaryForm) -> LCTerm {
    simplify(&to_lc_unary(u))
}

fn apply1(lam: &LCTerm, arg: &LCTerm) -> LCTerm {
    match lam {
        LCTerm::Lam(v, body) => substitute(body, v, arg),
        _ => unreachable!("conversion rules always produce lambdas"),
    }
}

fn apply2(lam: &LCTerm, a: &LCTerm, b: &LCTerm) -> LCTerm {
    match lam {
        LCTerm::Lam(v1, inner) => match &**inner {
            LCTerm::Lam(v2, body) => {
                // Rename the second parameter first if the first argument
                // mentions it, so the two substitutions stay independent.
                let (v2, body) = if matches!(a, LCTerm::Var(n) if n == v2) {
                    let mut used = body.all_vars();
                    used.insert(v1.clone());
                    if let LCTerm::Var(n) = b {
                        used.insert(n.clone());
                    }
                    let renamed = fresh_var(v2, &used);
                    let body = substitute(body, v2, &LCTerm::Var(renamed.clone()));
                    (renamed, body)
                } else {
                    (v2.clone(), (**body).clone())
                };
                substitute(&substitute(&body, v1, a), &v2, b)
            }
            _ => unreachable!("binary conversion rules produce two-place lambdas"),
        },
        _ => unreachable!("binary conversion rules produce two-place lambdas"),
    }
}

/// Capture-avoiding substitution of the element term `with` for free
/// occurrences of `var`.
pub fn substitute(t: &LCTerm, var: &str, with: &LCTerm) -> LCTerm {
    match t {
        LCTerm::Var(v) if v == var => with.clone(),
        LCTerm::Var(_) | LCTerm::Const(_) => t.clone(),
        LCTerm::Exists(v, body) | LCTerm::Lam(v, body) => {
            let rebuild = |v: &str, b: LCTerm| match t {
                LCTerm::Exists(..) => LCTerm::exists(v, b),
                _ => LCTerm::lam(v, b),
            };
            if v == var || !body.free_vars().contains(var) {
                return t.clone();
            }
            let captures = with.free_vars().contains(v);
            if captures {
                let mut used = body.all_vars();
                used.extend(with.all_vars());
                used.insert(var.to_string());
                let renamed = fresh_var(v, &used);
                let body = substitute(body, v, &LCTerm::Var(renamed.clone()));
                rebuild(&renamed, substitute(&body, var, with))
            } else {
                rebuild(v, substitute(body, var, with))
            }
        }
        LCTerm::Pred(p, a, b) => {
            LCTerm::Pred(p.clone(), Box::new(substitute(a, var, with)), Box::new(substitute(b, var, with)))
        }
        LCTerm::Eq(a, b) => LCTerm::eq(substitute(a, var, with), substitute(b, var, with)),
        LCTerm::And(a, b) => LCTerm::and(substitute(a, var, with), substitute(b, var, with)),
        LCTerm::Or(a, b) => LCTerm::or(substitute(a, var, with), substitute(b, var, with)),
        LCTerm::In(a, b) => LCTerm::is_in(substitute(a, var, with), substitute(b, var, with)),
        LCTerm::Sup(op, a, b) => LCTerm::sup(*op, substitute(a, var, with), substitute(b, var, with)),
        LCTerm::Not(a) => LCTerm::not(substitute(a, var, with)),
        LCTerm::Count(a) => LCTerm::count(substitute(a, var, with)),
        LCTerm::Dom(a) => LCTerm::dom(substitute(a, var, with)),
    }
}

fn flatten_into(t: LCTerm, conj: bool, out: &mut Vec<LCTerm>) {
    match t {
        LCTerm::And(a, b) if conj => {
            flatten_into(*a, conj, out);
            flatten_into(*b, conj, out);
        }
        LCTerm::Or(a, b) if !conj => {
            flatten_into(*a, conj, out);
            flatten_into(*b, conj, out);
        }
        other => out.push(other),
    }
}

fn rebuild(mut parts: Vec<LCTerm>, conj: bool) -> LCTerm {
    let mut acc = parts.pop().expect("at least one operand");
    while let Some(next) = parts.pop() {
        acc = if conj { LCTerm::and(next, acc) } else { LCTerm::or(next, acc) };
    }
    acc
}

/// Whether `phi` can only hold when `x` denotes an entity of the domain:
/// it asserts a triple with `x` as subject, or states `E(x)` outright.
fn forces_entity(phi: &LCTerm, x: &str) -> bool {
    match phi {
        LCTerm::Pred(_, s, _) => matches!(&**s, LCTerm::Var(v) if v == x),
        LCTerm::Dom(t) => matches!(&**t, LCTerm::Var(v) if v == x),
        LCTerm::And(a, b) => forces_entity(a, x) || forces_entity(b, x),
        LCTerm::Or(a, b) => forces_entity(a, x) && forces_entity(b, x),
        LCTerm::Exists(v, body) => v != x && forces_entity(body, x),
        _ => false,
    }
}

fn simplify_conjunction(conjuncts: Vec<LCTerm>) -> LCTerm {
    let mut kept: Vec<LCTerm> = Vec::with_capacity(conjuncts.len());
    for (i, c) in conjuncts.iter().enumerate() {
        if let LCTerm::Dom(t) = c {
            if let LCTerm::Var(x) = &**t {
                let implied = conjuncts
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && !matches!(other, LCTerm::Dom(_)) && forces_entity(other, x));
                if implied || kept.contains(c) {
                    continue;
                }
            }
        }
        kept.push(c.clone());
    }
    rebuild(kept, true)
}

/// Finds a conjunct `[v = t]` (either orientation) where `t` is a constant
/// or another variable, returning its index and `t`.
fn defining_equation(conjuncts: &[LCTerm], v: &str) -> Option<(usize, LCTerm)> {
    let usable = |t: &LCTerm| match t {
        LCTerm::Const(_) => true,
        LCTerm::Var(w) => w != v,
        _ => false,
    };
    conjuncts.iter().enumerate().find_map(|(i, c)| match c {
        LCTerm::Eq(a, b) => match (&**a, &**b) {
            (LCTerm::Var(w), other) if w == v && usable(other) => Some((i, other.clone())),
            (other, LCTerm::Var(w)) if w == v && usable(other) => Some((i, other.clone())),
            _ => None,
        },
        _ => None,
    })
}

fn simplify_once(t: &LCTerm) -> LCTerm {
    match t {
        LCTerm::Var(_) | LCTerm::Const(_) => t.clone(),
        LCTerm::Lam(v, body) => LCTerm::lam(v, simplify_once(body)),
        LCTerm::Exists(v, body) => {
            let mut conjuncts = Vec::new();
            flatten_into(simplify_once(body), true, &mut conjuncts);
            if conjuncts.len() > 1 {
                if let Some((i, value)) = defining_equation(&conjuncts, v) {
                    conjuncts.remove(i);
                    let rest = conjuncts.iter().map(|c| substitute(c, v, &value)).collect();
                    return rebuild(rest, true);
                }
            }
            LCTerm::exists(v, rebuild(conjuncts, true))
        }
        LCTerm::And(..) => {
            let mut conjuncts = Vec::new();
            flatten_into(t.clone(), true, &mut conjuncts);
            let conjuncts = conjuncts.iter().map(simplify_once).collect::<Vec<_>>();
            let mut flat = Vec::new();
            for c in conjuncts {
                flatten_into(c, true, &mut flat);
            }
            simplify_conjunction(flat)
        }
        LCTerm::Or(..) => {
            let mut disjuncts = Vec::new();
            flatten_into(t.clone(), false, &mut disjuncts);
            let mut flat = Vec::new();
            for d in disjuncts.iter().map(simplify_once) {
                flatten_into(d, false, &mut flat);
            }
            rebuild(flat, false)
        }
        LCTerm::Not(inner) => match &**inner {
            LCTerm::Not(inner) => simplify_once(inner),
            other => LCTerm::not(simplify_once(other)),
        },
        LCTerm::Eq(a, b) => match (&**a, &**b) {
            (LCTerm::Const(_), LCTerm::Var(_)) => LCTerm::eq((**b).clone(), (**a).clone()),
            _ => LCTerm::eq(simplify_once(a), simplify_once(b)),
        },
        LCTerm::Pred(..) | LCTerm::Dom(_) => t.clone(),
        LCTerm::Count(s) => LCTerm::count(simplify_once(s)),
        LCTerm::Sup(op, s, d) => LCTerm::sup(*op, simplify_once(s), simplify_once(d)),
        LCTerm::In(e, s) => LCTerm::is_in((**e).clone(), simplify_once(s)),
    }
}

/// Rewrites to fixpoint: existentials defined by an equation are
/// eliminated, equations put variables on the left, conjunctions and
/// disjunctions are flattened in order, double negations dropped, and
/// `E(x)` guards removed where another conjunct already forces `x` to be
/// an entity.
pub fn simplify(t: &LCTerm) -> LCTerm {
    let mut current = t.clone();
    loop {
        let next = simplify_once(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::alpha_eq;
    use crate::parser::{parse, parse_lc};

    fn lc(text: &str) -> LCTerm {
        parse_lc(text).unwrap()
    }

    #[test]
    fn fresh_var_suffixes() {
        let used = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(fresh_var("x", &used(&[])), "x");
        assert_eq!(fresh_var("x", &used(&["x"])), "x1");
        assert_eq!(fresh_var("x", &used(&["x", "x1"])), "x2");
        assert_eq!(fresh_var("x", &used(&["x", "x2"])), "x1");
    }

    #[test]
    fn base_case() {
        assert_eq!(to_lc_unary(&parse("Seattle").unwrap()).to_string(), "lambda x . [x = Seattle]");
    }

    #[test]
    fn binary_rules() {
        let p = to_lc_binary(&BinaryForm::property("PlaceOfBirth"));
        assert!(alpha_eq(&p, &lc("lambda x . lambda y . PlaceOfBirth(x,y)")));
        let r = to_lc_binary(&BinaryForm::reverse(BinaryForm::property("Children")));
        assert!(alpha_eq(&r, &lc("lambda y . lambda x . Children(x,y)")));
        let l = BinaryForm::lambda(
            "x",
            UnaryForm::count(UnaryForm::join(
                BinaryForm::reverse(BinaryForm::property("Children")),
                UnaryForm::var("x"),
            )),
        );
        assert!(alpha_eq(
            &simplify(&to_lc_binary(&l)),
            &lc("lambda n . lambda x . E(x) & [n = count(lambda c . Children(x,c))]")
        ));
    }

    #[test]
    fn raw_join_then_simplified() {
        let raw = to_lc_unary(&parse("PlaceOfBirth.Seattle").unwrap());
        assert_eq!(raw.to_string(), "lambda x . exists y . PlaceOfBirth(x,y) & [y = Seattle]");
        assert_eq!(simplify(&raw).to_string(), "lambda x . PlaceOfBirth(x,Seattle)");
    }

    #[test]
    fn simplify_examples() {
        let t = lc("lambda x . exists y . PlaceOfBirth(x,y) & [y = Seattle]");
        assert!(alpha_eq(&simplify(&t), &lc("lambda x . PlaceOfBirth(x,Seattle)")));
        let t = lc("lambda x . !!Type(x,USState)");
        assert!(alpha_eq(&simplify(&t), &lc("lambda x . Type(x,USState)")));
        let t = lc("lambda x . [x = Seattle]");
        assert_eq!(simplify(&t), t);
        let t = lc("lambda x . exists y . [Seattle = y] & Border(x,y)");
        assert!(alpha_eq(&simplify(&t), &lc("lambda x . Border(x,Seattle)")));
    }

    #[test]
    fn mu_conversion_keeps_the_cycle() {
        let u = parse("(mu x . Children.Influenced.x)").unwrap();
        let raw = to_lc_unary(&u);
        assert!(raw.free_vars().is_empty());
        assert!(alpha_eq(&simplify(&raw), &lc("lambda x . exists y . Children(x,y) & Influenced(y,x)")));
    }

    #[test]
    fn guards_stay_when_nothing_forces_an_entity() {
        let t = convert(&parse("!Seattle").unwrap());
        assert!(alpha_eq(&t, &lc("lambda x . E(x) & ![x = Seattle]")));
        let t = convert(&parse("(mu a . a)").unwrap());
        assert!(alpha_eq(&t, &lc("lambda x . E(x) & [x = x]")));
        // An object position does not force an entity: objects may be numbers.
        let t = convert(&parse("!R[Area].Washington").unwrap());
        assert!(alpha_eq(&t, &lc("lambda x . E(x) & !Area(Washington,x)")));
        let t = convert(&parse("(mu a . R[Area].a)").unwrap());
        assert!(alpha_eq(&t, &lc("lambda x . Area(x,x)")));
    }

    #[test]
    fn fresh_names_avoid_user_names_and_constants() {
        let t = to_lc_unary(&parse("(mu x . y.x)").unwrap());
        let printed = t.to_string();
        assert!(printed.starts_with("lambda x1 . "), "{printed}");
        assert!(alpha_eq(&parse_lc(&printed).unwrap(), &t));
    }

    #[test]
    fn substitution_avoids_capture() {
        let t = LCTerm::exists("y", LCTerm::pred("Children", LCTerm::var("x"), LCTerm::var("y")));
        let s = substitute(&t, "x", &LCTerm::var("y"));
        let expected = LCTerm::exists("z", LCTerm::pred("Children", LCTerm::var("y"), LCTerm::var("z")));
        assert!(alpha_eq(&s, &expected), "{s}");
        assert!(s.free_vars().contains("y"));
    }
}
