//! The finite knowledge base: a set of (entity, property, value) assertions
//! indexed in both directions.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use thiserror::Error;

use crate::ast::Value;

/// The demo knowledge base shipped in `fixtures/demo.tsv`.
pub const DEMO_TSV: &str = include_str!("../../../fixtures/demo.tsv");

#[derive(Debug, Error)]
pub enum KbError {
    #[error("line {0}: expected three tab-separated fields")]
    MalformedLine(usize),
    #[error("line {0}: subject must be an entity identifier")]
    BadSubject(usize),
    #[error("line {0}: property must be an identifier")]
    BadProperty(usize),
    #[error("line {0}: object is neither an identifier nor an integer")]
    BadObject(usize),
    #[error("line {0}: {1}")]
    Io(usize, #[source] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Value,
    pub property: String,
    pub object: Value,
}

impl Triple {
    /// Panics if `subject` is a number; numbers occur only as objects.
    pub fn new(subject: Value, property: &str, object: Value) -> Triple {
        assert!(subject.is_entity(), "triple subject must be an entity");
        Triple { subject, property: property.to_string(), object }
    }
}

type Index = BTreeMap<String, BTreeMap<Value, BTreeSet<Value>>>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    triples: BTreeSet<Triple>,
    forward: Index,
    backward: Index,
    entity_domain: BTreeSet<Value>,
    property_set: BTreeSet<String>,
}

fn is_kb_ident(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | ':' | '.'))
}

fn is_int_literal(token: &str) -> bool {
    let digits = token.strip_prefix('-').unwrap_or(token);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_line(line: &str, number: usize) -> Result<Option<Triple>, KbError> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let fields: Vec<&str> = line.split('\t').collect();
    let [subject, property, object] = fields[..] else {
        return Err(KbError::MalformedLine(number));
    };
    if !is_kb_ident(subject) {
        return Err(KbError::BadSubject(number));
    }
    if !is_kb_ident(property) {
        return Err(KbError::BadProperty(number));
    }
    let object = if is_int_literal(object) {
        Value::Number(object.parse().map_err(|_| KbError::BadObject(number))?)
    } else if is_kb_ident(object) {
        Value::entity(object)
    } else {
        return Err(KbError::BadObject(number));
    };
    Ok(Some(Triple::new(Value::entity(subject), property, object)))
}

impl KnowledgeBase {
    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> KnowledgeBase {
        let mut kb = KnowledgeBase::default();
        for t in triples {
            kb.insert(t);
        }
        kb
    }

    fn insert(&mut self, t: Triple) {
        if self.triples.contains(&t) {
            return;
        }
        self.forward
            .entry(t.property.clone())
            .or_default()
            .entry(t.subject.clone())
            .or_default()
            .insert(t.object.clone());
        self.backward
            .entry(t.property.clone())
            .or_default()
            .entry(t.object.clone())
            .or_default()
            .insert(t.subject.clone());
        self.entity_domain.insert(t.subject.clone());
        if t.object.is_entity() {
            self.entity_domain.insert(t.object.clone());
        }
        self.property_set.insert(t.property.clone());
        self.triples.insert(t);
    }

    /// Parses the tab-separated triple format from a reader.
    pub fn load(source: impl BufRead) -> Result<KnowledgeBase, KbError> {
        let mut kb = KnowledgeBase::default();
        for (i, line) in source.lines().enumerate() {
            let line = line.map_err(|e| KbError::Io(i + 1, e))?;
            if let Some(t) = parse_line(&line, i + 1)? {
                kb.insert(t);
            }
        }
        Ok(kb)
    }

    pub fn parse(text: &str) -> Result<KnowledgeBase, KbError> {
        KnowledgeBase::load(text.as_bytes())
    }

    pub fn demo() -> KnowledgeBase {
        KnowledgeBase::parse(DEMO_TSV).expect("bundled demo KB is well formed")
    }

    /// Serializes back to the triple file format, one line per triple in
    /// sorted order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.triples {
            out.push_str(&format!("{}\t{}\t{}\n", t.subject, t.property, t.object));
        }
        out
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, subject: &Value, property: &str, object: &Value) -> bool {
        self.forward.get(property).and_then(|m| m.get(subject)).is_some_and(|objs| objs.contains(object))
    }

    /// Named entities occurring in any subject or object position.
    pub fn entity_domain(&self) -> &BTreeSet<Value> {
        &self.entity_domain
    }

    pub fn property_set(&self) -> &BTreeSet<String> {
        &self.property_set
    }

    /// `{y : (subject, p, y) ∈ K}`.
    pub fn objects_of(&self, p: &str, subject: &Value) -> BTreeSet<Value> {
        self.forward.get(p).and_then(|m| m.get(subject)).cloned().unwrap_or_default()
    }

    /// `{x : (x, p, object) ∈ K}`.
    pub fn subjects_of(&self, p: &str, object: &Value) -> BTreeSet<Value> {
        self.backward.get(p).and_then(|m| m.get(object)).cloned().unwrap_or_default()
    }

    /// All `(subject, object)` pairs asserted for property `p`.
    pub fn pairs_of(&self, p: &str) -> BTreeSet<(Value, Value)> {
        let mut out = BTreeSet::new();
        if let Some(by_subject) = self.forward.get(p) {
            for (s, objs) in by_subject {
                for o in objs {
                    out.insert((s.clone(), o.clone()));
                }
            }
        }
        out
    }

    /// Number values appearing in object position.
    pub fn numeric_objects(&self) -> BTreeSet<Value> {
        self.triples.iter().filter(|t| !t.object.is_entity()).map(|t| t.object.clone()).collect()
    }

    /// Properties whose every object is a number.
    pub fn numeric_properties(&self) -> BTreeSet<String> {
        self.forward
            .iter()
            .filter(|(_, by_subject)| by_subject.values().flatten().all(|o| !o.is_entity()))
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Rebuilds the triple set from each index independently; both must
    /// reproduce the stored triples exactly.
    pub fn indexes_consistent(&self) -> bool {
        let mut from_forward = BTreeSet::new();
        for (p, by_subject) in &self.forward {
            for (s, objs) in by_subject {
                for o in objs {
                    from_forward.insert(Triple::new(s.clone(), p, o.clone()));
                }
            }
        }
        let mut from_backward = BTreeSet::new();
        for (p, by_object) in &self.backward {
            for (o, subjects) in by_object {
                for s in subjects {
                    from_backward.insert(Triple::new(s.clone(), p, o.clone()));
                }
            }
        }
        from_forward == self.triples && from_backward == self.triples
    }
}
