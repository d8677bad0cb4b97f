use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{BinaryForm, SuperlativeOp, UnaryForm, Value};
use crate::kb::KnowledgeBase;

/// The vocabulary random forms are drawn from.
#[derive(Debug, Clone)]
pub struct Schema {
    pub entities: Vec<Value>,
    pub properties: Vec<String>,
    pub numeric_properties: Vec<String>,
}

impl Schema {
    /// Entities and numbers of the KB, a few small numbers that counts are
    /// likely to produce, and one entity the KB has never heard of. An empty
    /// KB still gets one (unused) property so joins can be drawn.
    pub fn from_kb(kb: &KnowledgeBase) -> Schema {
        let mut entities: BTreeSet<Value> = kb.entity_domain().clone();
        entities.extend(kb.numeric_objects());
        entities.extend((0..4).map(Value::Number));
        let mut outsider = "Atlantis".to_string();
        while entities.contains(&Value::entity(&outsider)) {
            outsider.push('_');
        }
        entities.insert(Value::entity(outsider));
        let mut properties: Vec<String> = kb.property_set().iter().cloned().collect();
        if properties.is_empty() {
            properties.push("related".to_string());
        }
        Schema {
            entities: entities.into_iter().collect(),
            properties,
            numeric_properties: kb.numeric_properties().into_iter().collect(),
        }
    }
}

/// Draws a resolved unary of nesting depth at most `max_depth` (at least 1).
/// The same seed and schema always give the same form.
pub fn gen_term(seed: u64, max_depth: usize, schema: &Schema) -> UnaryForm {
    assert!(!schema.entities.is_empty() && !schema.properties.is_empty(), "schema needs entities and properties");
    let taken: BTreeSet<String> = schema
        .entities
        .iter()
        .filter_map(|v| match v {
            Value::Entity(n) => Some(n.clone()),
            Value::Number(_) => None,
        })
        .chain(schema.properties.iter().cloned())
        .collect();
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), schema, taken, scope: Vec::new(), next: 0 };
    g.unary(max_depth.max(1))
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    schema: &'a Schema,
    taken: BTreeSet<String>,
    scope: Vec<String>,
    next: usize,
}

#[derive(Clone, Copy)]
enum Kind {
    Entity,
    Var,
    Join,
    Intersect,
    Union,
    Negate,
    Count,
    Superlative,
    Mu,
}

impl Gen<'_> {
    fn fresh(&mut self) -> String {
        loop {
            let name = format!("v{}", self.next);
            self.next += 1;
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }

    fn entity(&mut self) -> UnaryForm {
        UnaryForm::EntityLit(self.schema.entities.choose(&mut self.rng).unwrap().clone())
    }

    fn property(&mut self) -> BinaryForm {
        BinaryForm::Property(self.schema.properties.choose(&mut self.rng).unwrap().clone())
    }

    fn variable(&mut self) -> Option<UnaryForm> {
        self.scope.choose(&mut self.rng).map(|v| UnaryForm::Var(v.clone()))
    }

    fn leaf(&mut self) -> UnaryForm {
        match self.rng.gen_range(0..4) {
            0 => self.entity(),
            1 => self.variable().unwrap_or_else(|| self.entity()),
            _ => {
                let b = if self.rng.gen_bool(0.3) { BinaryForm::reverse(self.property()) } else { self.property() };
                let target = if !self.scope.is_empty() && self.rng.gen_bool(0.5) {
                    self.variable().unwrap()
                } else {
                    self.entity()
                };
                UnaryForm::join(b, target)
            }
        }
    }

    fn unary(&mut self, depth: usize) -> UnaryForm {
        if depth <= 1 {
            return self.leaf();
        }
        let mut kinds: Vec<(Kind, u32)> = vec![
            (Kind::Entity, 2),
            (Kind::Join, 6),
            (Kind::Intersect, 4),
            (Kind::Union, 3),
            (Kind::Negate, 3),
            (Kind::Count, 2),
            (Kind::Superlative, 2),
            (Kind::Mu, 2),
        ];
        if !self.scope.is_empty() {
            kinds.push((Kind::Var, 3));
        }
        let kind = kinds.choose_weighted(&mut self.rng, |k| k.1).unwrap().0;
        let d = depth - 1;
        match kind {
            Kind::Entity => self.entity(),
            Kind::Var => self.variable().unwrap(),
            Kind::Join => {
                let b = self.binary(d);
                UnaryForm::join(b, self.unary(d))
            }
            Kind::Intersect => {
                let l = self.unary(d);
                UnaryForm::and(l, self.unary(d))
            }
            Kind::Union => {
                let l = self.unary(d);
                UnaryForm::or(l, self.unary(d))
            }
            Kind::Negate => UnaryForm::not(self.unary(d)),
            Kind::Count => UnaryForm::count(self.unary(d)),
            Kind::Superlative => {
                let op = if self.rng.gen_bool(0.5) { SuperlativeOp::Argmax } else { SuperlativeOp::Argmin };
                let set = self.unary(d);
                UnaryForm::superlative(op, set, self.degree(d))
            }
            Kind::Mu => {
                let v = self.fresh();
                self.scope.push(v.clone());
                let body = self.unary(d);
                self.scope.pop();
                UnaryForm::mu(&v, body)
            }
        }
    }

    fn binary(&mut self, depth: usize) -> BinaryForm {
        match self.rng.gen_range(0..10) {
            0..=5 => self.property(),
            6..=7 => {
                if depth >= 2 && self.rng.gen_bool(0.3) {
                    BinaryForm::reverse(self.binary(depth - 1))
                } else {
                    BinaryForm::reverse(self.property())
                }
            }
            _ => {
                if depth < 2 {
                    return self.property();
                }
                let v = self.fresh();
                self.scope.push(v.clone());
                let body = self.unary(depth - 1);
                self.scope.pop();
                BinaryForm::lambda(&v, body)
            }
        }
    }

    /// A numeric attribute, or the count of things a relation links to.
    fn degree(&mut self, depth: usize) -> BinaryForm {
        if !self.schema.numeric_properties.is_empty() && (depth < 2 || self.rng.gen_bool(0.5)) {
            return BinaryForm::Property(self.schema.numeric_properties.choose(&mut self.rng).unwrap().clone());
        }
        let v = self.fresh();
        let b = if depth >= 3 { self.binary(depth - 2) } else { self.property() };
        BinaryForm::reverse(BinaryForm::lambda(&v, UnaryForm::count(UnaryForm::join(b, UnaryForm::var(&v)))))
    }
}
