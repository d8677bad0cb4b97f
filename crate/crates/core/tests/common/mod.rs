#![allow(dead_code)]

use std::collections::BTreeSet;

use lambda_dcs::kb::Triple;
use lambda_dcs::{KnowledgeBase, Value};
use rand::Rng;

/// A random KB of at most `max_triples` triples over a small vocabulary:
/// entity-valued properties `P0..P3` and the numeric property `Size`.
pub fn random_kb(rng: &mut impl Rng, max_triples: usize) -> KnowledgeBase {
    let entities = rng.gen_range(2..=12);
    let n = rng.gen_range(1..=max_triples);
    let triples: Vec<Triple> = (0..n)
        .map(|_| {
            let s = Value::entity(format!("E{}", rng.gen_range(0..entities)));
            if rng.gen_bool(0.2) {
                Triple::new(s, "Size", Value::Number(rng.gen_range(-3..20)))
            } else {
                let p = format!("P{}", rng.gen_range(0..4));
                let o = Value::entity(format!("E{}", rng.gen_range(0..entities)));
                Triple::new(s, &p, o)
            }
        })
        .collect();
    KnowledgeBase::from_triples(triples)
}

pub fn scan_objects(kb: &KnowledgeBase, p: &str, s: &Value) -> BTreeSet<Value> {
    kb.triples().filter(|t| t.property == p && &t.subject == s).map(|t| t.object.clone()).collect()
}

pub fn scan_subjects(kb: &KnowledgeBase, p: &str, o: &Value) -> BTreeSet<Value> {
    kb.triples().filter(|t| t.property == p && &t.object == o).map(|t| t.subject.clone()).collect()
}

/// Every value mentioned by the KB plus one it does not mention.
pub fn probe_values(kb: &KnowledgeBase) -> Vec<Value> {
    let mut out: BTreeSet<Value> = BTreeSet::new();
    for t in kb.triples() {
        out.insert(t.subject.clone());
        out.insert(t.object.clone());
    }
    out.insert(Value::entity("Absent"));
    out.insert(Value::Number(999));
    out.into_iter().collect()
}

/// Probes for every property plus one the KB does not have.
pub fn probe_properties(kb: &KnowledgeBase) -> Vec<String> {
    let mut out: Vec<String> = kb.property_set().iter().cloned().collect();
    out.push("Missing".to_string());
    out
}
