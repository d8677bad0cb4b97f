use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// An identifier; `quoted` is set for backquoted names, which are never
    /// keywords.
    Ident {
        name: String,
        quoted: bool,
    },
    Int(i64),
    Dot,
    Amp,
    Pipe,
    OrOr,
    Bang,
    Eq,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident { name, .. } => format!("identifier `{name}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Dot => "`.`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::OrOr => "`||`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'.' => Some(Tok::Dot),
            b'&' => Some(Tok::Amp),
            b'!' => Some(Tok::Bang),
            b'=' => Some(Tok::Eq),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos: start });
            i += 1;
            continue;
        }
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'|' => {
                if bytes.get(i + 1) == Some(&b'|') {
                    out.push(Token { tok: Tok::OrOr, pos: start });
                    i += 2;
                } else {
                    out.push(Token { tok: Tok::Pipe, pos: start });
                    i += 1;
                }
            }
            b'`' => {
                let Some(len) = text[i + 1..].find('`') else {
                    return Err(ParseError::Unbalanced { pos: start });
                };
                let name = &text[i + 1..i + 1 + len];
                if name.is_empty() || name.contains(['\t', '\n', '\r']) {
                    return Err(ParseError::Syntax { pos: start, expected: "a non-empty quoted identifier".into() });
                }
                out.push(Token { tok: Tok::Ident { name: name.to_string(), quoted: true }, pos: start });
                i += len + 2;
            }
            b'-' | b'0'..=b'9' => {
                let digits_start = if c == b'-' { i + 1 } else { i };
                let mut j = digits_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits_start {
                    return Err(ParseError::Syntax { pos: start, expected: "a digit after `-`".into() });
                }
                let n = text[start..j]
                    .parse()
                    .map_err(|_| ParseError::Syntax { pos: start, expected: "an integer within 64 bits".into() })?;
                out.push(Token { tok: Tok::Int(n), pos: start });
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b':') {
                    j += 1;
                }
                out.push(Token { tok: Tok::Ident { name: text[i..j].to_string(), quoted: false }, pos: start });
                i = j;
            }
            _ => {
                return Err(ParseError::Syntax { pos: start, expected: "a token".into() });
            }
        }
    }
    check_balance(&out, text.len())?;
    Ok(out)
}

fn check_balance(tokens: &[Token], end: usize) -> Result<(), ParseError> {
    let mut stack: Vec<&Token> = Vec::new();
    for t in tokens {
        match t.tok {
            Tok::LParen | Tok::LBracket => stack.push(t),
            Tok::RParen | Tok::RBracket => {
                let want = if t.tok == Tok::RParen { Tok::LParen } else { Tok::LBracket };
                match stack.pop() {
                    Some(open) if open.tok == want => {}
                    _ => return Err(ParseError::Unbalanced { pos: t.pos }),
                }
            }
            _ => {}
        }
    }
    match stack.pop() {
        Some(_) => Err(ParseError::Unbalanced { pos: end }),
        None => Ok(()),
    }
}
