//! The `lambda-dcs` command line tool.
//!
//! Exit codes: 0 success, 1 parse, resolve or knowledge base error,
//! 2 evaluation error, 3 construct not expressible in SPARQL,
//! 4 `check` found a disagreement.

use std::fs::File;
use std::io::{self, BufRead, BufReader, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::ast::{Env, Value};
use crate::convert::{convert, to_lc_unary};
use crate::eval::{eval_unary, EntitySet};
use crate::kb::KnowledgeBase;
use crate::oracle::check_many;
use crate::parser::{parse, parse_with_kb, DcsError};
use crate::sparql::compile_sparql;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_EVAL: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "lambda-dcs", version, about = "Evaluate, convert and compile lambda DCS logical forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a form against a knowledge base.
    Eval {
        /// Tab-separated triples file; the bundled demo KB when omitted.
        #[arg(long)]
        kb: Option<PathBuf>,
        /// Reject properties the knowledge base does not mention.
        #[arg(long)]
        strict: bool,
        /// Print the result as a JSON array.
        #[arg(long)]
        json: bool,
        query: String,
    },
    /// Print the lambda calculus translation of a form.
    Lc {
        /// Skip simplification.
        #[arg(long)]
        raw: bool,
        query: String,
    },
    /// Compile a form to a SPARQL SELECT query.
    Sparql {
        /// IRI prefix bound to the default `:` prefix.
        #[arg(long)]
        prefix: Option<String>,
        query: String,
    },
    /// Compare direct evaluation with the lambda calculus oracle on random forms.
    Check {
        #[arg(long)]
        kb: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Interactive evaluation loop.
    Repl {
        #[arg(long)]
        kb: Option<PathBuf>,
    },
}

/// Entry point of the binary. Usage errors exit with [`EXIT_INPUT`].
pub fn main() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return std::process::ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let code = run(cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::ExitCode::from(code)
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Eval { kb, strict, json, query } => {
            let kb = match load_kb(kb.as_deref()) {
                Ok(kb) => kb,
                Err(msg) => return fail(err, EXIT_INPUT, &msg),
            };
            cmd_eval(&kb, &query, strict, json, out, err)
        }
        Command::Lc { raw, query } => match parse(&query) {
            Ok(u) => {
                let t = if raw { to_lc_unary(&u) } else { convert(&u) };
                let _ = writeln!(out, "{t}");
                0
            }
            Err(e) => report_dcs_error(err, &query, &e),
        },
        Command::Sparql { prefix, query } => cmd_sparql(&query, prefix.as_deref(), out, err),
        Command::Check { kb, trials, depth, seed } => {
            let kb = match load_kb(kb.as_deref()) {
                Ok(kb) => kb,
                Err(msg) => return fail(err, EXIT_INPUT, &msg),
            };
            cmd_check(&kb, trials, depth, seed, out)
        }
        Command::Repl { kb } => {
            let kb = match load_kb(kb.as_deref()) {
                Ok(kb) => kb,
                Err(msg) => return fail(err, EXIT_INPUT, &msg),
            };
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            repl(kb, &mut stdin.lock(), out, prompt);
            0
        }
    }
}

fn fail(err: &mut dyn Write, code: u8, msg: &str) -> u8 {
    let _ = writeln!(err, "error: {msg}");
    code
}

pub fn load_kb(path: Option<&Path>) -> Result<KnowledgeBase, String> {
    let Some(path) = path else {
        return Ok(KnowledgeBase::demo());
    };
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    KnowledgeBase::load(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()))
}

fn report_dcs_error(err: &mut dyn Write, query: &str, e: &DcsError) -> u8 {
    let _ = writeln!(err, "error: {e}");
    if let DcsError::Parse(p) = e {
        let col = query[..p.position().min(query.len())].chars().count();
        let _ = writeln!(err, "  {query}\n  {}^", " ".repeat(col));
    }
    EXIT_INPUT
}

pub fn render_lines(set: &EntitySet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}

pub fn render_json(set: &EntitySet) -> String {
    let items: Vec<serde_json::Value> = set
        .iter()
        .map(|v| match v {
            Value::Entity(e) => serde_json::Value::from(e.as_str()),
            Value::Number(n) => serde_json::Value::from(*n),
        })
        .collect();
    serde_json::Value::Array(items).to_string()
}

fn cmd_eval(kb: &KnowledgeBase, query: &str, strict: bool, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let u = match parse_with_kb(query, kb, strict) {
        Ok(u) => u,
        Err(e) => return report_dcs_error(err, query, &e),
    };
    match eval_unary(&u, kb, &Env::new()) {
        Ok(set) => {
            let _ = if json { writeln!(out, "{}", render_json(&set)) } else { write!(out, "{}", render_lines(&set)) };
            0
        }
        Err(e) => fail(err, EXIT_EVAL, &e.to_string()),
    }
}

fn cmd_sparql(query: &str, prefix: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let u = match parse(query) {
        Ok(u) => u,
        Err(e) => return report_dcs_error(err, query, &e),
    };
    match compile_sparql(&u, prefix) {
        Ok(q) => {
            let _ = write!(out, "{q}");
            0
        }
        Err(e) => fail(err, EXIT_UNSUPPORTED, &e.to_string()),
    }
}

pub fn cmd_check(kb: &KnowledgeBase, trials: u64, depth: usize, seed: u64, out: &mut dyn Write) -> u8 {
    let mismatches = check_many(kb, trials, depth, seed);
    for m in &mismatches {
        let _ = writeln!(out, "mismatch in trial {} (seed {}):\n{}\n", m.trial, m.seed, m.report);
    }
    let _ = writeln!(out, "trials={trials} mismatches={}", mismatches.len());
    if mismatches.is_empty() {
        0
    } else {
        EXIT_MISMATCH
    }
}

/// Reads one command per line until `:quit` or end of input.
pub fn repl(mut kb: KnowledgeBase, input: &mut dyn BufRead, out: &mut dyn Write, prompt: bool) {
    let mut line = String::new();
    loop {
        if prompt {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => return,
            Ok(_) => {}
        }
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let (cmd, arg) = match text.strip_prefix(':') {
            Some(rest) => {
                let (c, a) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                (Some(c), a.trim())
            }
            None => (None, text),
        };
        let mut sink = Vec::new();
        match cmd {
            None => {
                cmd_eval(&kb, arg, false, false, out, &mut sink);
            }
            Some("quit") | Some("q") => return,
            Some("lc") => match parse(arg) {
                Ok(u) => {
                    let _ = writeln!(out, "{}", convert(&u));
                }
                Err(e) => {
                    report_dcs_error(&mut sink, arg, &e);
                }
            },
            Some("sparql") => {
                cmd_sparql(arg, None, out, &mut sink);
            }
            Some("load") => match load_kb(Some(Path::new(arg))) {
                Ok(new) => {
                    let _ = writeln!(out, "loaded {} triples", new.len());
                    kb = new;
                }
                Err(msg) => {
                    fail(&mut sink, EXIT_INPUT, &msg);
                }
            },
            Some(other) => {
                let _ = writeln!(sink, "error: unknown command `:{other}` (try :lc, :sparql, :load, :quit)");
            }
        }
        let _ = out.write_all(&sink);
    }
}
