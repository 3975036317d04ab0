//! Recursive-descent parser for integrand expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | name '(' expr ')' | name | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus and is right-associative, so `-2^2`
//! is `-4` and `2^3^2` is `512`. Implicit multiplication is not accepted.

use std::fmt;

use thiserror::Error;

use super::{BinaryOp, Expr, Function};

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseFailure {
    pub offset: usize,
    pub message: String,
    /// What the parser would have accepted at `offset`.
    pub expected: Option<String>,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(v) => format!("number {v}"),
            Token::Name(n) => format!("name `{n}`"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn failure(offset: usize, message: impl Into<String>, expected: Option<&str>) -> ParseFailure {
    ParseFailure {
        offset,
        message: message.into(),
        expected: expected.map(str::to_owned),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseFailure> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            i = scan_number(bytes, i)?;
            let text = &src[start..i];
            let value: f64 = text
                .parse()
                .map_err(|_| failure(start, format!("malformed number `{text}`"), Some("a decimal literal")))?;
            if !value.is_finite() {
                return Err(failure(start, format!("number `{text}` is out of range"), None));
            }
            out.push((start, Token::Number(value)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Name(src[start..i].to_owned())));
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return Err(failure(start, format!("unexpected character `{ch}`"), None));
        }
    }
    out.push((src.len(), Token::End));
    Ok(out)
}

/// Scans `digits [. digits] [(e|E) [+|-] digits]`, returning the end offset.
fn scan_number(bytes: &[u8], mut i: usize) -> Result<usize, ParseFailure> {
    let start = i;
    let digits = |i: &mut usize| {
        let s = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - s
    };
    let mut mantissa = digits(&mut i);
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        mantissa += digits(&mut i);
    }
    if mantissa == 0 {
        return Err(failure(start, "a number needs at least one digit", Some("a digit")));
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let exp_at = i;
        i += 1;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        if digits(&mut i) == 0 {
            return Err(failure(exp_at, "exponent has no digits", Some("a digit")));
        }
    }
    Ok(i)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: Token, hint: &str) -> Result<(), ParseFailure> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(failure(
                self.offset(),
                format!("found {}", self.peek().describe()),
                Some(hint),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseFailure> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Plus => BinaryOp::Add,
                Token::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseFailure> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Token::Star => BinaryOp::Mul,
                Token::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseFailure> {
        if *self.peek() == Token::Minus {
            self.bump();
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseFailure> {
        let base = self.primary()?;
        if *self.peek() == Token::Caret {
            self.bump();
            let exponent = self.unary()?;
            Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseFailure> {
        let at = self.offset();
        match self.bump() {
            Token::Number(v) => Ok(Expr::Const(v)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Token::Name(name) => {
                if *self.peek() == Token::LParen {
                    let func = Function::from_name(&name).ok_or_else(|| {
                        failure(
                            at,
                            format!("unknown function `{name}`"),
                            Some("one of exp, ln, sin, cos, atan, sqrt, abs"),
                        )
                    })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Token::RParen, "')'")?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else if Function::from_name(&name).is_some() {
                    Err(failure(
                        self.offset(),
                        format!("function `{name}` must be called"),
                        Some("'('"),
                    ))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            other => Err(failure(
                at,
                format!("found {}", other.describe()),
                Some("a number, name or '('"),
            )),
        }
    }
}

/// Parses an expression.
pub fn parse(source: &str) -> Result<Expr, ParseFailure> {
    if source.trim().is_empty() {
        return Err(failure(0, "empty expression", Some("an expression")));
    }
    let mut parser = Parser {
        tokens: tokenize(source)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    match parser.peek() {
        Token::End => Ok(expr),
        Token::RParen => Err(failure(
            parser.offset(),
            "unbalanced ')'",
            Some("an operator or end of input"),
        )),
        other => Err(failure(
            parser.offset(),
            format!("found {}", other.describe()),
            Some("an operator or end of input"),
        )),
    }
}
