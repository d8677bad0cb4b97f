//! Direct set-denotational evaluation of lambda DCS over a knowledge base.
//!
//! Unaries denote finite sets of values and binaries finite sets of pairs.
//! Complement, mu candidates and lambda bindings range over the entity
//! domain of the knowledge base (closed world, numbers excluded).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ast::{BinaryForm, Env, SuperlativeOp, UnaryForm, UnboundVariable, Value};
use crate::kb::KnowledgeBase;

pub type EntitySet = BTreeSet<Value>;
pub type PairSet = BTreeSet<(Value, Value)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("superlative degree `{value}` of `{element}` is not a number")]
    NonNumericDegree { element: Value, value: Value },
}

impl From<UnboundVariable> for EvalError {
    fn from(e: UnboundVariable) -> Self {
        EvalError::UnboundVariable(e.0)
    }
}

pub fn eval_unary(u: &UnaryForm, kb: &KnowledgeBase, env: &Env) -> Result<EntitySet, EvalError> {
    Ok(match u {
        UnaryForm::EntityLit(v) => EntitySet::from([v.clone()]),
        UnaryForm::Var(a) => EntitySet::from([env.get(a)?.clone()]),
        UnaryForm::Join(b, u) => {
            let targets = eval_unary(u, kb, env)?;
            join(b, &targets, kb, env)?
        }
        UnaryForm::Intersect(l, r) => {
            let l = eval_unary(l, kb, env)?;
            let r = eval_unary(r, kb, env)?;
            l.intersection(&r).cloned().collect()
        }
        UnaryForm::Union(l, r) => {
            let mut l = eval_unary(l, kb, env)?;
            l.extend(eval_unary(r, kb, env)?);
            l
        }
        UnaryForm::Negate(u) => {
            let inner = eval_unary(u, kb, env)?;
            kb.entity_domain().difference(&inner).cloned().collect()
        }
        UnaryForm::Aggregate(_, u) => {
            let n = eval_unary(u, kb, env)?.len();
            EntitySet::from([Value::Number(n as i64)])
        }
        UnaryForm::Superlative(op, u, b) => {
            let candidates = eval_unary(u, kb, env)?;
            superlative(*op, &candidates, b, kb, env)?
        }
        UnaryForm::Mu(a, body) => {
            let mut out = EntitySet::new();
            for c in kb.entity_domain() {
                if eval_unary(body, kb, &env.with(a, c.clone()))?.contains(c) {
                    out.insert(c.clone());
                }
            }
            out
        }
    })
}

/// `{x : ∃y ∈ targets, (x, y) ∈ b}`, answered from the property indexes
/// when `b` is a property or a reversed property.
fn join(b: &BinaryForm, targets: &EntitySet, kb: &KnowledgeBase, env: &Env) -> Result<EntitySet, EvalError> {
    let mut out = EntitySet::new();
    match b {
        BinaryForm::Property(p) => {
            for y in targets {
                out.extend(kb.subjects_of(p, y));
            }
        }
        BinaryForm::Reverse(inner) if matches!(**inner, BinaryForm::Property(_)) => {
            let BinaryForm::Property(p) = &**inner else { unreachable!() };
            for y in targets {
                out.extend(kb.objects_of(p, y));
            }
        }
        _ => {
            for (x, y) in eval_binary(b, kb, env)? {
                if targets.contains(&y) {
                    out.insert(x);
                }
            }
        }
    }
    Ok(out)
}

pub fn eval_binary(b: &BinaryForm, kb: &KnowledgeBase, env: &Env) -> Result<PairSet, EvalError> {
    Ok(match b {
        BinaryForm::Property(p) => kb.pairs_of(p),
        BinaryForm::Reverse(inner) => eval_binary(inner, kb, env)?.into_iter().map(|(x, y)| (y, x)).collect(),
        // ⟦λa.u⟧ relates each x in u's denotation under a binding to that binding.
        BinaryForm::Lambda(a, body) => {
            let mut out = PairSet::new();
            for c in kb.entity_domain() {
                for x in eval_unary(body, kb, &env.with(a, c.clone()))? {
                    out.insert((x, c.clone()));
                }
            }
            out
        }
    })
}

/// All values related to `x` through `b`.
fn related(x: &Value, b: &BinaryForm, kb: &KnowledgeBase, env: &Env) -> Result<EntitySet, EvalError> {
    Ok(match b {
        BinaryForm::Property(p) => kb.objects_of(p, x),
        BinaryForm::Reverse(inner) if matches!(**inner, BinaryForm::Property(_)) => {
            let BinaryForm::Property(p) = &**inner else { unreachable!() };
            kb.subjects_of(p, x)
        }
        _ => eval_binary(b, kb, env)?.into_iter().filter(|(s, _)| s == x).map(|(_, o)| o).collect(),
    })
}

fn numeric_degrees(x: &Value, related: EntitySet) -> Result<Vec<i64>, EvalError> {
    related
        .into_iter()
        .map(|v| v.as_number().ok_or_else(|| EvalError::NonNumericDegree { element: x.clone(), value: v.clone() }))
        .collect()
}

/// The largest degree of `x` under `b`, or `None` if `x` has no degree.
pub fn degree_of(x: &Value, b: &BinaryForm, kb: &KnowledgeBase, env: &Env) -> Result<Option<i64>, EvalError> {
    let degrees = numeric_degrees(x, related(x, b, kb, env)?)?;
    Ok(degrees.into_iter().max())
}

fn superlative(
    op: SuperlativeOp,
    candidates: &EntitySet,
    b: &BinaryForm,
    kb: &KnowledgeBase,
    env: &Env,
) -> Result<EntitySet, EvalError> {
    // Materialize a general binary once rather than per candidate.
    let by_subject: Option<BTreeMap<Value, EntitySet>> = match b {
        BinaryForm::Property(_) => None,
        BinaryForm::Reverse(inner) if matches!(**inner, BinaryForm::Property(_)) => None,
        _ => {
            let mut grouped: BTreeMap<Value, EntitySet> = BTreeMap::new();
            for (s, o) in eval_binary(b, kb, env)? {
                grouped.entry(s).or_default().insert(o);
            }
            Some(grouped)
        }
    };
    let mut scored = Vec::new();
    for x in candidates {
        let rel = match &by_subject {
            Some(grouped) => grouped.get(x).cloned().unwrap_or_default(),
            None => related(x, b, kb, env)?,
        };
        let degrees = numeric_degrees(x, rel)?;
        let collapsed = match op {
            SuperlativeOp::Argmax => degrees.into_iter().max(),
            SuperlativeOp::Argmin => degrees.into_iter().min(),
        };
        if let Some(d) = collapsed {
            scored.push((x, d));
        }
    }
    let best = match op {
        SuperlativeOp::Argmax => scored.iter().map(|(_, d)| *d).max(),
        SuperlativeOp::Argmin => scored.iter().map(|(_, d)| *d).min(),
    };
    Ok(scored.into_iter().filter(|(_, d)| Some(*d) == best).map(|(x, _)| x.clone()).collect())
}
