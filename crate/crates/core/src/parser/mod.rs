//! Concrete ASCII syntax for lambda DCS, name resolution, and the
//! round-tripping pretty-printer. Also hosts the reader for the lambda
//! calculus surface syntax used by golden files.
//!
//! ```text
//! unary   := union
//! union   := inter { "|" inter }
//! inter   := uatom { "&" uatom }
//! uatom   := "!" uatom | joinexp
//! joinexp := binary "." uatom | primary
//! primary := IDENT | INT | "count" "(" unary ")"
//!          | ("argmax" | "argmin") "(" unary "," binary ")"
//!          | "(" "mu" IDENT "." unary ")" | "(" unary ")"
//! binary  := IDENT | "R" "[" binary "]" | "(" "lam" IDENT "." unary ")"
//! ```
//!
//! Identifiers are `[A-Za-z_][A-Za-z0-9_:]*`; any other name (for example
//! one containing `.`) is written between backquotes.

mod dcs;
mod format;
mod lc;
mod lexer;
mod resolve;

use thiserror::Error;

use crate::ast::{SuperlativeOp, UnaryForm};
use crate::kb::KnowledgeBase;

pub use dcs::parse_unary;
pub use format::{format, format_binary};
pub use lc::parse_lc;
pub use resolve::{resolve, resolve_lenient, ResolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unbalanced delimiter at position {pos}")]
    Unbalanced { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Unbalanced { pos } => *pos,
        }
    }
}

/// A parsed but unresolved unary: leaf names are not yet classified as
/// entities or variables, nor checked against a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawUnary {
    Name(String),
    Int(i64),
    Join(Box<RawBinary>, Box<RawUnary>),
    Intersect(Box<RawUnary>, Box<RawUnary>),
    Union(Box<RawUnary>, Box<RawUnary>),
    Negate(Box<RawUnary>),
    Count(Box<RawUnary>),
    Superlative(SuperlativeOp, Box<RawUnary>, Box<RawBinary>),
    Mu(String, Box<RawUnary>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawBinary {
    Name(String),
    Reverse(Box<RawBinary>),
    Lambda(String, Box<RawUnary>),
}

/// Either stage of turning text into a resolved form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcsError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// Parses and resolves against `kb`.
pub fn parse_with_kb(text: &str, kb: &KnowledgeBase, strict: bool) -> Result<UnaryForm, DcsError> {
    Ok(resolve(&parse_unary(text)?, kb, strict)?)
}

/// Parses and resolves without a schema.
pub fn parse(text: &str) -> Result<UnaryForm, DcsError> {
    Ok(resolve_lenient(&parse_unary(text)?)?)
}
