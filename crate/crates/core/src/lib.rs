//! Lambda dependency-based compositional semantics (lambda DCS).
//!
//! - [`ast`]: logical forms, lambda calculus terms and values
//! - [`kb`]: triple store with forward and backward indexes
//! - [`parser`]: surface syntax for both languages
//! - [`eval`]: direct set-denotational evaluation
//! - [`convert`](mod@convert): translation to lambda calculus and simplification
//! - [`oracle`]: brute-force lambda calculus model checking and random forms
//! - [`sparql`]: compilation to SPARQL `SELECT` queries
//! - [`cli`]: the `lambda-dcs` command line tool

pub mod ast;
pub mod cli;
pub mod convert;
pub mod eval;
pub mod kb;
pub mod oracle;
pub mod parser;
pub mod sparql;

pub use ast::{alpha_eq, BinaryForm, Env, LCTerm, SuperlativeOp, UnaryForm, Value};
pub use convert::{convert, simplify, to_lc_unary};
pub use eval::{eval_unary, EntitySet, EvalError, PairSet};
pub use kb::{KbError, KnowledgeBase, Triple};
pub use oracle::{check_equivalence, gen_term, lc_eval, Schema};
pub use parser::{parse, parse_lc, parse_with_kb, DcsError, ParseError};
pub use sparql::{compile_sparql, SparqlError};
