use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{Env, UnaryForm};
use crate::convert::{simplify, to_lc_unary};
use crate::eval::{eval_unary, EntitySet};
use crate::kb::KnowledgeBase;
use crate::parser::format;

use super::{gen_term, lc_eval_set, Schema};

/// The result of one evaluation route; errors are kept as their message.
pub type Outcome = Result<EntitySet, String>;

/// Direct evaluation next to the oracle's reading of the raw and the
/// simplified conversion.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub form: String,
    pub lc: String,
    pub direct: Outcome,
    pub raw: Outcome,
    pub simplified: Outcome,
}

fn agree(a: &Outcome, b: &Outcome) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

impl EquivalenceReport {
    pub fn raw_agrees(&self) -> bool {
        agree(&self.direct, &self.raw)
    }

    pub fn simplified_agrees(&self) -> bool {
        agree(&self.direct, &self.simplified)
    }

    pub fn is_match(&self) -> bool {
        self.raw_agrees() && self.simplified_agrees()
    }
}

fn show(o: &Outcome) -> String {
    match o {
        Ok(set) => {
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            format!("{{{}}}", items.join(", "))
        }
        Err(e) => format!("error: {e}"),
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "agree" } else { "DIFFER" };
        writeln!(f, "form:       {}", self.form)?;
        writeln!(f, "lc:         {}", self.lc)?;
        writeln!(f, "direct:     {}", show(&self.direct))?;
        writeln!(f, "raw:        {} [{}]", show(&self.raw), verdict(self.raw_agrees()))?;
        write!(f, "simplified: {} [{}]", show(&self.simplified), verdict(self.simplified_agrees()))
    }
}

/// Evaluates `u` directly and through both conversions.
pub fn check_equivalence(u: &UnaryForm, kb: &KnowledgeBase) -> EquivalenceReport {
    let env = Env::new();
    let raw_lc = to_lc_unary(u);
    let simple_lc = simplify(&raw_lc);
    EquivalenceReport {
        form: format(u),
        lc: simple_lc.to_string(),
        direct: eval_unary(u, kb, &env).map_err(|e| e.to_string()),
        raw: lc_eval_set(&raw_lc, kb, &env).map_err(|e| e.to_string()),
        simplified: lc_eval_set(&simple_lc, kb, &env).map_err(|e| e.to_string()),
    }
}

/// A failed trial of [`check_many`].
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub trial: u64,
    pub seed: u64,
    pub report: EquivalenceReport,
}

/// Checks `trials` generated forms of depth at most `depth`. Per-trial
/// seeds are drawn from `seed`, so a run is reproducible.
pub fn check_many(kb: &KnowledgeBase, trials: u64, depth: usize, seed: u64) -> Vec<Mismatch> {
    let schema = Schema::from_kb(kb);
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for trial in 0..trials {
        let seed = seeds.next_u64();
        let report = check_equivalence(&gen_term(seed, depth, &schema), kb);
        if !report.is_match() {
            out.push(Mismatch { trial, seed, report });
        }
    }
    out
}
