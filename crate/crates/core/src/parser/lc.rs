use super::lexer::{lex, Tok, Token};
use super::ParseError;
use crate::ast::{LCTerm, SuperlativeOp, Value, LC_KEYWORDS};

/// Reads the lambda calculus surface syntax produced by `LCTerm`'s
/// `Display`. A bare name is a variable when an enclosing `lambda` or
/// `exists` binds it and an entity constant otherwise.
pub fn parse_lc(text: &str) -> Result<LCTerm, ParseError> {
    let tokens = lex(text)?;
    let mut p = LcParser { tokens, at: 0, end: text.len(), scope: Vec::new() };
    let t = p.term()?;
    if let Some(t) = p.tokens.get(p.at) {
        return Err(ParseError::Syntax { pos: t.pos, expected: format!("end of input, found {}", t.tok.describe()) });
    }
    Ok(t)
}

struct LcParser {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    scope: Vec<String>,
}

impl LcParser {
    fn peek_tok(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.at + offset).map(|t| &t.tok)
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let (pos, found) = match self.tokens.get(self.at) {
            Some(t) => (t.pos, t.tok.describe()),
            None => (self.end, "end of input".to_string()),
        };
        Err(ParseError::Syntax { pos, expected: format!("{expected}, found {found}") })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok(0) == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek_tok(0), Some(Tok::Ident { name, quoted: false }) if name == kw)
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek_tok(0) {
            Some(Tok::Ident { name, quoted }) if *quoted || !LC_KEYWORDS.contains(&name.as_str()) => {
                let n = name.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.error("a variable name"),
        }
    }

    fn term(&mut self) -> Result<LCTerm, ParseError> {
        for kw in ["lambda", "exists"] {
            if self.keyword(kw) {
                self.at += 1;
                let var = self.name()?;
                self.expect(Tok::Dot)?;
                self.scope.push(var.clone());
                let body = self.term();
                self.scope.pop();
                let body = body?;
                return Ok(if kw == "lambda" { LCTerm::lam(&var, body) } else { LCTerm::exists(&var, body) });
            }
        }
        self.or()
    }

    fn or(&mut self) -> Result<LCTerm, ParseError> {
        let left = self.and()?;
        if self.eat(&Tok::OrOr) {
            return Ok(LCTerm::or(left, self.or()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<LCTerm, ParseError> {
        let left = self.not()?;
        if self.eat(&Tok::Amp) {
            return Ok(LCTerm::and(left, self.and()?));
        }
        Ok(left)
    }

    fn not(&mut self) -> Result<LCTerm, ParseError> {
        if self.eat(&Tok::Bang) {
            return Ok(LCTerm::not(self.not()?));
        }
        self.atom()
    }

    fn pair(&mut self) -> Result<(LCTerm, LCTerm), ParseError> {
        self.expect(Tok::LParen)?;
        let a = self.term()?;
        self.expect(Tok::Comma)?;
        let b = self.term()?;
        self.expect(Tok::RParen)?;
        Ok((a, b))
    }

    fn atom(&mut self) -> Result<LCTerm, ParseError> {
        match self.peek_tok(0).cloned() {
            Some(Tok::LBracket) => {
                self.at += 1;
                let l = self.term()?;
                self.expect(Tok::Eq)?;
                let r = self.term()?;
                self.expect(Tok::RBracket)?;
                Ok(LCTerm::eq(l, r))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(LCTerm::Const(Value::Number(n)))
            }
            Some(Tok::Ident { name, quoted }) => {
                self.at += 1;
                let call = self.peek_tok(0) == Some(&Tok::LParen);
                if !quoted && call {
                    match name.as_str() {
                        "count" => {
                            self.at += 1;
                            let s = self.term()?;
                            self.expect(Tok::RParen)?;
                            return Ok(LCTerm::count(s));
                        }
                        "argmax" | "argmin" => {
                            let op = if name == "argmax" { SuperlativeOp::Argmax } else { SuperlativeOp::Argmin };
                            let (s, d) = self.pair()?;
                            return Ok(LCTerm::sup(op, s, d));
                        }
                        "in" => {
                            let (e, s) = self.pair()?;
                            return Ok(LCTerm::is_in(e, s));
                        }
                        "E" => {
                            self.at += 1;
                            let t = self.term()?;
                            self.expect(Tok::RParen)?;
                            return Ok(LCTerm::dom(t));
                        }
                        _ => {}
                    }
                }
                if !quoted && LC_KEYWORDS.contains(&name.as_str()) {
                    self.at -= 1;
                    return self.error("a term");
                }
                if call {
                    let (a, b) = self.pair()?;
                    return Ok(LCTerm::Pred(name, Box::new(a), Box::new(b)));
                }
                if self.scope.contains(&name) {
                    Ok(LCTerm::Var(name))
                } else {
                    Ok(LCTerm::Const(Value::Entity(name)))
                }
            }
            _ => self.error("a term"),
        }
    }
}
