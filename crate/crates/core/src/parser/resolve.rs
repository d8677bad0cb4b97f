use thiserror::Error;

use super::{RawBinary, RawUnary};
use crate::ast::{BinaryForm, UnaryForm, Value};
use crate::kb::KnowledgeBase;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("variable `{0}` is already bound by an enclosing binder")]
    ShadowedVariable(String),
    #[error("variable `{0}` used in binary position")]
    VariableInBinaryPosition(String),
}

struct Resolver<'a> {
    kb: Option<&'a KnowledgeBase>,
    scope: Vec<String>,
}

impl Resolver<'_> {
    fn bind<T>(&mut self, var: &str, f: impl FnOnce(&mut Self) -> Result<T, ResolveError>) -> Result<T, ResolveError> {
        if self.scope.iter().any(|v| v == var) {
            return Err(ResolveError::ShadowedVariable(var.to_string()));
        }
        self.scope.push(var.to_string());
        let r = f(self);
        self.scope.pop();
        r
    }

    fn unary(&mut self, raw: &RawUnary) -> Result<UnaryForm, ResolveError> {
        Ok(match raw {
            RawUnary::Name(n) if self.scope.contains(n) => UnaryForm::Var(n.clone()),
            RawUnary::Name(n) => UnaryForm::EntityLit(Value::Entity(n.clone())),
            RawUnary::Int(n) => UnaryForm::EntityLit(Value::Number(*n)),
            RawUnary::Join(b, u) => UnaryForm::join(self.binary(b)?, self.unary(u)?),
            RawUnary::Intersect(l, r) => UnaryForm::and(self.unary(l)?, self.unary(r)?),
            RawUnary::Union(l, r) => UnaryForm::or(self.unary(l)?, self.unary(r)?),
            RawUnary::Negate(u) => UnaryForm::not(self.unary(u)?),
            RawUnary::Count(u) => UnaryForm::count(self.unary(u)?),
            RawUnary::Superlative(op, u, b) => UnaryForm::superlative(*op, self.unary(u)?, self.binary(b)?),
            RawUnary::Mu(var, body) => {
                let body = self.bind(var, |r| r.unary(body))?;
                UnaryForm::Mu(var.clone(), Box::new(body))
            }
        })
    }

    fn binary(&mut self, raw: &RawBinary) -> Result<BinaryForm, ResolveError> {
        Ok(match raw {
            RawBinary::Name(n) => {
                if self.scope.contains(n) {
                    return Err(ResolveError::VariableInBinaryPosition(n.clone()));
                }
                if let Some(kb) = self.kb {
                    if !kb.property_set().contains(n) {
                        return Err(ResolveError::UnknownProperty(n.clone()));
                    }
                }
                BinaryForm::Property(n.clone())
            }
            RawBinary::Reverse(b) => BinaryForm::reverse(self.binary(b)?),
            RawBinary::Lambda(var, body) => {
                let body = self.bind(var, |r| r.unary(body))?;
                BinaryForm::Lambda(var.clone(), Box::new(body))
            }
        })
    }
}

/// Classifies every leaf name: a name bound by an enclosing binder is a
/// variable; otherwise a name in binary position is a property and one in
/// unary position an entity. With `strict`, properties must exist in `kb`.
pub fn resolve(raw: &RawUnary, kb: &KnowledgeBase, strict: bool) -> Result<UnaryForm, ResolveError> {
    let mut r = Resolver { kb: strict.then_some(kb), scope: Vec::new() };
    r.unary(raw)
}

/// Resolution with no schema: every binary-position name is a property.
pub fn resolve_lenient(raw: &RawUnary) -> Result<UnaryForm, ResolveError> {
    let mut r = Resolver { kb: None, scope: Vec::new() };
    r.unary(raw)
}
