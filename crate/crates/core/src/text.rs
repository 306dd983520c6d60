//! Tokenizer and parse diagnostics shared by the polynomial, element and
//! presentation grammars.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(String),
    Ident(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("repeated leaf label {0}")]
    RepeatedLeaf(u32),
    #[error("leaf out of range: label {label} in a term with {leaves} leaves")]
    LeafOutOfRange { label: u32, leaves: usize },
    #[error("relation `{name}` has arity {arity}, expected 3")]
    NotArity3 { name: String, arity: usize },
    #[error("undeclared parameter `{0}`")]
    UndeclaredParameter(String),
    #[error("terms of different arity ({0} and {1}) in one element")]
    MixedArity(usize, usize),
    #[error("duplicate declaration `{0}`")]
    Duplicate(String),
    #[error("unknown operad `{0}`")]
    UnknownOperad(String),
    #[error("invalid declaration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

const SYMBOLS: [&str; 17] = [
    "->", "=>", "+", "-", "*", "/", "^", "(", ")", ",", ";", ":", "{", "}", "=", "[", "]",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Int(src[start..i].to_string()),
                line,
                col,
                start,
                end: i,
            });
            col += i - start;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                line,
                col,
                start,
                end: i,
            });
            col += i - start;
            continue;
        }
        for sym in SYMBOLS {
            if src[i..].starts_with(sym) {
                i += sym.len();
                out.push(Token {
                    tok: Tok::Sym(sym),
                    line,
                    col,
                    start,
                    end: i,
                });
                col += sym.len();
                continue 'outer;
            }
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::Syntax(format!("unexpected character `{ch}`")),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
        start: bytes.len(),
        end: bytes.len(),
    });
    Ok(out)
}

/// Cursor over a token list.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn token(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.token();
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    pub fn error_at(&self, tok: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: tok.line,
            col: tok.col,
            kind,
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self.peek().to_string();
        self.error(ParseErrorKind::Syntax(format!(
            "expected {wanted}, found {found}"
        )))
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<Token, ParseError> {
        if self.at_sym(s) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump())),
            _ => Err(self.unexpected("identifier")),
        }
    }

    pub fn expect_int(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => Ok((s, self.bump())),
            _ => Err(self.unexpected("integer")),
        }
    }

    /// A name that may contain hyphens, written without surrounding spaces
    /// (`almost-poisson`).
    pub fn expect_name(&mut self) -> Result<(String, Token), ParseError> {
        let (mut name, first) = self.expect_ident()?;
        let mut end = first.end;
        loop {
            let dash = &self.toks[self.pos];
            let next = &self.toks[(self.pos + 1).min(self.toks.len() - 1)];
            let glued = matches!(dash.tok, Tok::Sym("-"))
                && dash.start == end
                && next.start == dash.end
                && matches!(next.tok, Tok::Ident(_) | Tok::Int(_));
            if !glued {
                break;
            }
            self.bump();
            let part = self.bump();
            match part.tok {
                Tok::Ident(s) | Tok::Int(s) => {
                    name.push('-');
                    name.push_str(&s);
                }
                _ => unreachable!(),
            }
            end = part.end;
        }
        Ok((name, first))
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("a # note\n  b(1,2) => x").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("a".into()));
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
        assert!(toks.iter().any(|t| t.tok == Tok::Sym("=>")));
    }

    #[test]
    fn hyphenated_names() {
        let mut c = Cursor::new("almost-poisson {").unwrap();
        assert_eq!(c.expect_name().unwrap().0, "almost-poisson");
        let mut c = Cursor::new("t - v").unwrap();
        assert_eq!(c.expect_name().unwrap().0, "t");
    }

    #[test]
    fn bad_character() {
        let err = tokenize("m(1,2) $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
    }
}
