use super::lexer::{lex, Tok, Token};
use super::{ParseError, RawBinary, RawUnary};
use crate::ast::{SuperlativeOp, DCS_KEYWORDS};

/// Parses lambda DCS text into an unresolved form.
pub fn parse_unary(text: &str) -> Result<RawUnary, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0, end: text.len() };
    let u = p.unary()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Syntax { pos: t.pos, expected: format!("end of input, found {}", t.tok.describe()) });
    }
    Ok(u)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn peek_tok(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.at + offset).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let expected = match self.peek() {
            Some(t) => format!("{expected}, found {}", t.tok.describe()),
            None => format!("{expected}, found end of input"),
        };
        Err(ParseError::Syntax { pos: self.pos(), expected })
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

    fn keyword_at(&self, offset: usize, kw: &str) -> bool {
        matches!(self.peek_tok(offset), Some(Tok::Ident { name, quoted: false }) if name == kw)
    }

    /// A name usable as an entity, property or variable.
    fn plain_name_at(&self, offset: usize) -> Option<&str> {
        match self.peek_tok(offset) {
            Some(Tok::Ident { name, quoted: true }) => Some(name),
            Some(Tok::Ident { name, quoted: false }) if !DCS_KEYWORDS.contains(&name.as_str()) => Some(name),
            _ => None,
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.plain_name_at(0) {
            Some(n) => {
                let n = n.to_string();
                self.at += 1;
                Ok(n)
            }
            None => self.error(what),
        }
    }

    fn unary(&mut self) -> Result<RawUnary, ParseError> {
        let mut left = self.inter()?;
        while self.eat(&Tok::Pipe) {
            let right = self.inter()?;
            left = RawUnary::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn inter(&mut self) -> Result<RawUnary, ParseError> {
        let mut left = self.uatom()?;
        while self.eat(&Tok::Amp) {
            let right = self.uatom()?;
            left = RawUnary::Intersect(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn uatom(&mut self) -> Result<RawUnary, ParseError> {
        if self.eat(&Tok::Bang) {
            return Ok(RawUnary::Negate(Box::new(self.uatom()?)));
        }
        if self.starts_binary() {
            let b = self.binary()?;
            self.expect(Tok::Dot)?;
            let u = self.uatom()?;
            return Ok(RawUnary::Join(Box::new(b), Box::new(u)));
        }
        self.primary()
    }

    fn starts_binary(&self) -> bool {
        if self.keyword_at(0, "R") && self.peek_tok(1) == Some(&Tok::LBracket) {
            return true;
        }
        if self.peek_tok(0) == Some(&Tok::LParen) && self.keyword_at(1, "lam") {
            return true;
        }
        self.plain_name_at(0).is_some() && self.peek_tok(1) == Some(&Tok::Dot)
    }

    fn primary(&mut self) -> Result<RawUnary, ParseError> {
        if let Some(Tok::Int(n)) = self.peek_tok(0) {
            let n = *n;
            self.at += 1;
            return Ok(RawUnary::Int(n));
        }
        if self.keyword_at(0, "count") {
            self.at += 1;
            self.expect(Tok::LParen)?;
            let u = self.unary()?;
            self.expect(Tok::RParen)?;
            return Ok(RawUnary::Count(Box::new(u)));
        }
        for (kw, op) in [("argmax", SuperlativeOp::Argmax), ("argmin", SuperlativeOp::Argmin)] {
            if self.keyword_at(0, kw) {
                self.at += 1;
                self.expect(Tok::LParen)?;
                let u = self.unary()?;
                self.expect(Tok::Comma)?;
                let b = self.binary()?;
                self.expect(Tok::RParen)?;
                return Ok(RawUnary::Superlative(op, Box::new(u), Box::new(b)));
            }
        }
        if self.eat(&Tok::LParen) {
            if self.keyword_at(0, "mu") {
                self.at += 1;
                let var = self.name("a variable name")?;
                self.expect(Tok::Dot)?;
                let body = self.unary()?;
                self.expect(Tok::RParen)?;
                return Ok(RawUnary::Mu(var, Box::new(body)));
            }
            let u = self.unary()?;
            self.expect(Tok::RParen)?;
            return Ok(u);
        }
        if self.plain_name_at(0).is_some() {
            return Ok(RawUnary::Name(self.name("an identifier")?));
        }
        self.error("a unary expression")
    }

    fn binary(&mut self) -> Result<RawBinary, ParseError> {
        if self.keyword_at(0, "R") && self.peek_tok(1) == Some(&Tok::LBracket) {
            self.at += 2;
            let b = self.binary()?;
            self.expect(Tok::RBracket)?;
            return Ok(RawBinary::Reverse(Box::new(b)));
        }
        if self.peek_tok(0) == Some(&Tok::LParen) && self.keyword_at(1, "lam") {
            self.at += 2;
            let var = self.name("a variable name")?;
            self.expect(Tok::Dot)?;
            let body = self.unary()?;
            self.expect(Tok::RParen)?;
            return Ok(RawBinary::Lambda(var, Box::new(body)));
        }
        if self.plain_name_at(0).is_some() {
            return Ok(RawBinary::Name(self.name("a property")?));
        }
        self.error("a binary expression")
    }
}
