//! A brute-force model checker for the lambda calculus side of the
//! conversion. It shares no code with [`crate::eval`]: it never consults the
//! knowledge base's indexes, and it realizes every quantifier and lambda by
//! enumerating a finite active domain.
//!
//! The active domain is the entity domain, every constant of the term,
//! every number stored in the knowledge base, and every number produced by
//! a `count(...)` during evaluation; the last part is grown to a fixpoint.

mod check;
mod gen;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::ast::{Env, LCTerm, SuperlativeOp, Value};
use crate::eval::{EntitySet, PairSet};
use crate::kb::KnowledgeBase;

pub use check::{check_equivalence, check_many, EquivalenceReport, Mismatch, Outcome};
pub use gen::{gen_term, Schema};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("superlative degree `{value}` of `{element}` is not a number")]
    NonNumericDegree { element: Value, value: Value },
    #[error("active domain did not stabilize")]
    DomainDiverged,
}

/// What a term evaluates to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LcValue {
    Bool(bool),
    Value(Value),
    Set(EntitySet),
    Pairs(PairSet),
}

impl LcValue {
    fn kind(&self) -> &'static str {
        match self {
            LcValue::Bool(_) => "truth value",
            LcValue::Value(_) => "element",
            LcValue::Set(_) => "set",
            LcValue::Pairs(_) => "relation",
        }
    }
}

const MAX_DOMAIN_ROUNDS: usize = 32;

/// Evaluates `t` by exhaustive enumeration over the active domain.
pub fn lc_eval(t: &LCTerm, kb: &KnowledgeBase, env: &Env) -> Result<LcValue, OracleError> {
    let facts: HashSet<(Value, String, Value)> =
        kb.triples().map(|t| (t.subject.clone(), t.property.clone(), t.object.clone())).collect();
    let mut entities = BTreeSet::new();
    let mut domain = BTreeSet::new();
    for (s, _, o) in &facts {
        entities.insert(s.clone());
        if o.is_entity() {
            entities.insert(o.clone());
        }
        domain.insert(s.clone());
        domain.insert(o.clone());
    }
    collect_constants(t, &mut domain);

    for _ in 0..MAX_DOMAIN_ROUNDS {
        let mut oracle = Oracle {
            facts: &facts,
            entities: &entities,
            domain: domain.iter().cloned().collect(),
            counts: BTreeSet::new(),
            memo: HashMap::new(),
            free: HashMap::new(),
        };
        let result = oracle.eval(t, env)?;
        let missing: Vec<Value> = oracle.counts.difference(&domain).cloned().collect();
        if missing.is_empty() {
            return Ok(result);
        }
        domain.extend(missing);
    }
    Err(OracleError::DomainDiverged)
}

/// Evaluates a one-place lambda to the set it describes.
pub fn lc_eval_set(t: &LCTerm, kb: &KnowledgeBase, env: &Env) -> Result<EntitySet, OracleError> {
    match lc_eval(t, kb, env)? {
        LcValue::Set(s) => Ok(s),
        other => Err(OracleError::IllTyped(format!("expected a set, got a {}", other.kind()))),
    }
}

fn collect_constants(t: &LCTerm, out: &mut BTreeSet<Value>) {
    if let LCTerm::Const(v) = t {
        out.insert(v.clone());
    }
    for c in t.children() {
        collect_constants(c, out);
    }
}

type MemoKey = (usize, Vec<(String, Value)>);

struct Oracle<'a> {
    facts: &'a HashSet<(Value, String, Value)>,
    entities: &'a BTreeSet<Value>,
    domain: Vec<Value>,
    counts: BTreeSet<Value>,
    // Closed-over set-valued subterms are re-evaluated only when the
    // bindings of their free variables change.
    memo: HashMap<MemoKey, LcValue>,
    free: HashMap<usize, BTreeSet<String>>,
}

impl Oracle<'_> {
    fn element(&mut self, t: &LCTerm, env: &Env) -> Result<Value, OracleError> {
        match self.eval(t, env)? {
            LcValue::Value(v) => Ok(v),
            other => Err(OracleError::IllTyped(format!("expected an element in `{t}`, got a {}", other.kind()))),
        }
    }

    fn truth(&mut self, t: &LCTerm, env: &Env) -> Result<bool, OracleError> {
        match self.eval(t, env)? {
            LcValue::Bool(b) => Ok(b),
            other => Err(OracleError::IllTyped(format!("expected a formula in `{t}`, got a {}", other.kind()))),
        }
    }

    fn set(&mut self, t: &LCTerm, env: &Env) -> Result<EntitySet, OracleError> {
        match self.eval(t, env)? {
            LcValue::Set(s) => Ok(s),
            other => Err(OracleError::IllTyped(format!("expected a set in `{t}`, got a {}", other.kind()))),
        }
    }

    fn pairs(&mut self, t: &LCTerm, env: &Env) -> Result<PairSet, OracleError> {
        match self.eval(t, env)? {
            LcValue::Pairs(p) => Ok(p),
            other => Err(OracleError::IllTyped(format!("expected a relation in `{t}`, got a {}", other.kind()))),
        }
    }

    fn memo_key(&mut self, t: &LCTerm, env: &Env) -> MemoKey {
        let id = t as *const LCTerm as usize;
        let free = self.free.entry(id).or_insert_with(|| t.free_vars());
        (id, env.restricted_to(free.iter()))
    }

    fn eval(&mut self, t: &LCTerm, env: &Env) -> Result<LcValue, OracleError> {
        let memoize = matches!(t, LCTerm::Lam(..) | LCTerm::Count(_) | LCTerm::Sup(..));
        if memoize {
            let key = self.memo_key(t, env);
            if let Some(v) = self.memo.get(&key) {
                return Ok(v.clone());
            }
            let v = self.eval_uncached(t, env)?;
            self.memo.insert(key, v.clone());
            return Ok(v);
        }
        self.eval_uncached(t, env)
    }

    fn eval_uncached(&mut self, t: &LCTerm, env: &Env) -> Result<LcValue, OracleError> {
        Ok(match t {
            LCTerm::Var(v) => LcValue::Value(env.get(v).map_err(|e| OracleError::UnboundVariable(e.0))?.clone()),
            LCTerm::Const(c) => LcValue::Value(c.clone()),
            LCTerm::Pred(p, a, b) => {
                let s = self.element(a, env)?;
                let o = self.element(b, env)?;
                LcValue::Bool(self.facts.contains(&(s, p.clone(), o)))
            }
            LCTerm::Eq(a, b) => {
                let l = self.element(a, env)?;
                let r = self.element(b, env)?;
                LcValue::Bool(l == r)
            }
            LCTerm::And(a, b) => LcValue::Bool(self.truth(a, env)? && self.truth(b, env)?),
            LCTerm::Or(a, b) => LcValue::Bool(self.truth(a, env)? || self.truth(b, env)?),
            LCTerm::Not(a) => LcValue::Bool(!self.truth(a, env)?),
            LCTerm::Dom(a) => {
                let v = self.element(a, env)?;
                LcValue::Bool(self.entities.contains(&v))
            }
            LCTerm::Exists(v, body) => {
                let mut found = false;
                for c in self.domain.clone() {
                    if self.truth(body, &env.with(v, c))? {
                        found = true;
                        break;
                    }
                }
                LcValue::Bool(found)
            }
            LCTerm::Lam(v, body) => match &**body {
                LCTerm::Lam(w, inner) => {
                    let mut out = PairSet::new();
                    let domain = self.domain.clone();
                    for a in &domain {
                        let env_a = env.with(v, a.clone());
                        for b in &domain {
                            if self.truth(inner, &env_a.with(w, b.clone()))? {
                                out.insert((a.clone(), b.clone()));
                            }
                        }
                    }
                    LcValue::Pairs(out)
                }
                _ => {
                    let mut out = EntitySet::new();
                    for c in self.domain.clone() {
                        if self.truth(body, &env.with(v, c.clone()))? {
                            out.insert(c);
                        }
                    }
                    LcValue::Set(out)
                }
            },
            LCTerm::Count(s) => {
                let n = Value::Number(self.set(s, env)?.len() as i64);
                self.counts.insert(n.clone());
                LcValue::Value(n)
            }
            LCTerm::Sup(op, s, d) => {
                let candidates = self.set(s, env)?;
                let relation = self.pairs(d, env)?;
                LcValue::Set(extremal(*op, &candidates, &relation)?)
            }
            LCTerm::In(e, s) => {
                let x = self.element(e, env)?;
                LcValue::Bool(self.set(s, env)?.contains(&x))
            }
        })
    }
}

/// Superlative over an explicit relation: each candidate's degrees are the
/// numbers it relates to (max-collapsed for argmax, min for argmin);
/// candidates without a degree drop out and all extremal ones are kept.
fn extremal(op: SuperlativeOp, candidates: &EntitySet, relation: &PairSet) -> Result<EntitySet, OracleError> {
    let mut degree: BTreeMap<&Value, i64> = BTreeMap::new();
    for (x, n) in relation {
        if !candidates.contains(x) {
            continue;
        }
        let Value::Number(n) = n else {
            return Err(OracleError::NonNumericDegree { element: x.clone(), value: n.clone() });
        };
        let slot = degree.entry(x).or_insert(*n);
        *slot = match op {
            SuperlativeOp::Argmax => (*slot).max(*n),
            SuperlativeOp::Argmin => (*slot).min(*n),
        };
    }
    let target = match op {
        SuperlativeOp::Argmax => degree.values().max(),
        SuperlativeOp::Argmin => degree.values().min(),
    };
    Ok(degree.iter().filter(|(_, d)| Some(*d) == target).map(|(x, _)| (*x).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_lc;

    fn e(n: &str) -> Value {
        Value::entity(n)
    }

    fn run(text: &str) -> LcValue {
        lc_eval(&parse_lc(text).unwrap(), &KnowledgeBase::demo(), &Env::new()).unwrap()
    }

    #[test]
    fn enumerated_join() {
        assert_eq!(run("lambda x . PlaceOfBirth(x,Seattle)"), LcValue::Set(EntitySet::from([e("Alice"), e("Carol")])));
    }

    #[test]
    fn closed_existential() {
        assert_eq!(run("exists y . Children(Dave,y) & PlaceOfBirth(y,Seattle)"), LcValue::Bool(true));
        assert_eq!(run("exists y . Children(Eve,y) & PlaceOfBirth(y,Seattle)"), LcValue::Bool(true));
        assert_eq!(run("exists y . Children(Alice,y)"), LcValue::Bool(false));
    }

    #[test]
    fn count_results_join_the_domain() {
        assert_eq!(
            run("lambda x . [x = count(lambda y . Type(y,USState))]"),
            LcValue::Set(EntitySet::from([Value::Number(3)]))
        );
        // The domain size is not stored anywhere; it only exists as a count.
        let kb = KnowledgeBase::demo();
        let n = kb.entity_domain().len() as i64;
        assert_eq!(run("lambda x . [x = count(lambda y . E(y))]"), LcValue::Set(EntitySet::from([Value::Number(n)])));
    }

    #[test]
    fn superlative_and_membership() {
        assert_eq!(
            run("lambda x . in(x, argmax(lambda y . Type(y,USState), lambda a . lambda b . Area(a,b)))"),
            LcValue::Set(EntitySet::from([e("California")]))
        );
        let err = lc_eval(
            &parse_lc("lambda x . in(x, argmax(lambda y . Type(y,USState), lambda a . lambda b . Border(a,b)))")
                .unwrap(),
            &KnowledgeBase::demo(),
            &Env::new(),
        );
        assert!(matches!(err, Err(OracleError::NonNumericDegree { .. })));
    }

    #[test]
    fn ill_typed_terms() {
        let kb = KnowledgeBase::demo();
        let bad = parse_lc("lambda x . count(lambda y . E(y))").unwrap();
        assert!(matches!(lc_eval(&bad, &kb, &Env::new()), Err(OracleError::IllTyped(_))));
        let bad = parse_lc("lambda x . [x = lambda y . E(y)]").unwrap();
        assert!(matches!(lc_eval(&bad, &kb, &Env::new()), Err(OracleError::IllTyped(_))));
        let open = LCTerm::lam("x", LCTerm::eq(LCTerm::var("x"), LCTerm::var("free")));
        assert_eq!(lc_eval(&open, &kb, &Env::new()), Err(OracleError::UnboundVariable("free".into())));
    }

    #[test]
    fn domain_guard() {
        let kb = KnowledgeBase::demo();
        let set = lc_eval_set(&parse_lc("lambda x . E(x) & ![x = Seattle]").unwrap(), &kb, &Env::new()).unwrap();
        assert_eq!(set.len(), kb.entity_domain().len() - 1);
        assert!(set.iter().all(Value::is_entity));
    }
}
