use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ast::{BinOp, Expr, ExprKind, Func, Span};
use crate::numerics::{parse_decimal, Scalar};

/// Deepest expression tree the parser accepts.
pub const MAX_DEPTH: usize = 128;

const FACTOR_START: &[&str] = &["number", "-", "(", "qexp", "qln", "qnum", "heine"];
const AFTER_OPERAND: &[&str] = &["q+", "q-", "q*", "q/", "d*", "end of input"];

/// A parsed subtree and its nesting depth.
type Parsed = Result<(Expr, usize), ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    /// 1-based character column of `span.start`.
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, "; expected {one}"),
            many => write!(f, "; expected one of {}", many.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Scalar),
    Op(BinOp),
    Minus,
    LParen,
    RParen,
    Func(Func),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(v) => format!("number {v}"),
            Tok::Op(op) => format!("operator {}", op.symbol()),
            Tok::Minus => "\"-\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Func(func) => format!("function {}", func.name()),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn error(&self, span: Span, expected: &[&'static str], message: impl Into<String>) -> ParseError {
        make_error(self.src, span, expected, message)
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.bytes().get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<(Tok, Span), ParseError> {
        let start = self.pos;
        self.digits();
        if self.bytes().get(self.pos) == Some(&b'.') {
            self.pos += 1;
            if self.digits() == 0 {
                let at = Span::new(self.pos, self.pos + self.peek_char().map_or(0, char::len_utf8));
                return Err(self.error(at, &["digit"], "missing digits after the decimal point"));
            }
        }
        if matches!(self.bytes().get(self.pos), Some(b'e' | b'E')) {
            let b = self.bytes();
            let signed = matches!(b.get(self.pos + 1), Some(b'+' | b'-'));
            let first = self.pos + 1 + signed as usize;
            if b.get(first).is_some_and(u8::is_ascii_digit) {
                self.pos = first;
                self.digits();
            }
        }
        let span = Span::new(start, self.pos);
        let text = &self.src[start..self.pos];
        let value = parse_decimal(text)
            .ok_or_else(|| self.error(span, &[], format!("number {text} is out of range")))?;
        Ok((Tok::Number(Scalar::from_rational(value)), span))
    }

    fn word(&mut self) -> Result<(Tok, Span), ParseError> {
        let start = self.pos;
        while self
            .bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        let span = Span::new(start, self.pos);
        let name = &self.src[start..self.pos];
        Func::from_name(name)
            .map(|f| (Tok::Func(f), span))
            .ok_or_else(|| self.error(span, FACTOR_START, format!("unknown name {name:?}")))
    }

    fn next(&mut self) -> Result<(Tok, Span), ParseError> {
        while self.peek_char().is_some_and(char::is_whitespace) {
            self.pos += self.peek_char().map_or(0, char::len_utf8);
        }
        let start = self.pos;
        let Some(c) = self.peek_char() else {
            return Ok((Tok::Eof, Span::new(start, start)));
        };
        let single = |tok: Tok, len: usize| Ok((tok, Span::new(start, start + len)));
        let next_byte = self.bytes().get(start + 1).copied();
        let tok = match (c, next_byte) {
            ('q', Some(b'+')) => Tok::Op(BinOp::QAdd),
            ('q', Some(b'-')) => Tok::Op(BinOp::QSub),
            ('q', Some(b'*')) => Tok::Op(BinOp::QMul),
            ('q', Some(b'/')) => Tok::Op(BinOp::QDiv),
            ('d', Some(b'*')) => Tok::Op(BinOp::DMul),
            ('⊕' | '⊖' | '⊗' | '⊘' | '◇', _) => {
                self.pos += c.len_utf8();
                let op = match c {
                    '⊕' => BinOp::QAdd,
                    '⊖' => BinOp::QSub,
                    '⊗' => BinOp::QMul,
                    '⊘' => BinOp::QDiv,
                    _ => BinOp::DMul,
                };
                return single(Tok::Op(op), c.len_utf8());
            }
            ('0'..='9', _) => return self.number(),
            (c, _) if c.is_ascii_alphabetic() || c == '_' => return self.word(),
            ('-', _) => {
                self.pos += 1;
                return single(Tok::Minus, 1);
            }
            ('(', _) => {
                self.pos += 1;
                return single(Tok::LParen, 1);
            }
            (')', _) => {
                self.pos += 1;
                return single(Tok::RParen, 1);
            }
            (c, _) => {
                let span = Span::new(start, start + c.len_utf8());
                let expected: Vec<&'static str> = FACTOR_START.iter().chain(AFTER_OPERAND).copied().collect();
                return Err(self.error(span, &expected, format!("unknown operator or character {c:?}")));
            }
        };
        self.pos += 2;
        single(tok, 2)
    }
}

fn make_error(src: &str, span: Span, expected: &[&'static str], message: impl Into<String>) -> ParseError {
    let column = src.get(..span.start).map_or(span.start, |s| s.chars().count()) + 1;
    ParseError {
        span,
        column,
        expected: expected.to_vec(),
        message: message.into(),
    }
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &(Tok, Span) {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let (tok, span) = self.peek();
        make_error(self.src, *span, expected, format!("unexpected {}", tok.describe()))
    }

    fn too_deep(&self, span: Span) -> ParseError {
        make_error(self.src, span, &[], format!("expression nests deeper than {MAX_DEPTH} levels"))
    }

    /// Left-associative chain of `operand` separated by operators of `level`.
    fn chain(
        &mut self,
        level: u8,
        depth: usize,
        operand: fn(&mut Self, usize) -> Parsed,
    ) -> Parsed {
        let (mut lhs, mut lhs_depth) = operand(self, depth)?;
        loop {
            let op = match &self.peek().0 {
                Tok::Op(op) if op.precedence() == level => *op,
                _ => return Ok((lhs, lhs_depth)),
            };
            self.bump();
            let (rhs, rhs_depth) = operand(self, depth)?;
            let node_depth = 1 + lhs_depth.max(rhs_depth);
            let span = lhs.span.join(rhs.span);
            if node_depth > MAX_DEPTH {
                return Err(self.too_deep(span));
            }
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
            lhs_depth = node_depth;
        }
    }

    fn expr(&mut self, depth: usize) -> Parsed {
        self.chain(1, depth, Self::term)
    }

    fn term(&mut self, depth: usize) -> Parsed {
        self.chain(2, depth, Self::factor)
    }

    fn factor(&mut self, depth: usize) -> Parsed {
        if depth >= MAX_DEPTH {
            return Err(self.too_deep(self.peek().1));
        }
        let (tok, span) = self.peek().clone();
        if !matches!(tok, Tok::Number(_) | Tok::Minus | Tok::LParen | Tok::Func(_)) {
            return Err(self.unexpected(FACTOR_START));
        }
        self.bump();
        match tok {
            Tok::Number(v) => Ok((Expr::new(ExprKind::Literal(v), span), 1)),
            Tok::Minus => {
                let (inner, d) = self.factor(depth + 1)?;
                let span = span.join(inner.span);
                Ok((Expr::new(ExprKind::Neg(Box::new(inner)), span), d + 1))
            }
            Tok::LParen => {
                let (inner, d) = self.expr(depth + 1)?;
                let close = self.expect_rparen()?;
                // parentheses only group; the node keeps the outer span
                Ok((Expr::new(inner.kind, span.join(close)), d))
            }
            Tok::Func(func) => {
                if self.peek().0 != Tok::LParen {
                    return Err(self.unexpected(&["("]));
                }
                self.bump();
                let (arg, d) = self.expr(depth + 1)?;
                let close = self.expect_rparen()?;
                Ok((Expr::new(ExprKind::Call(func, Box::new(arg)), span.join(close)), d + 1))
            }
            _ => unreachable!("checked above"),
        }
    }

    fn expect_rparen(&mut self) -> Result<Span, ParseError> {
        match self.peek() {
            (Tok::RParen, span) => {
                let span = *span;
                self.bump();
                Ok(span)
            }
            _ => Err(self.unexpected(&[")"])),
        }
    }
}

/// Parses one expression covering the whole of `src`.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut lexer = Lexer { src, pos: 0 };
    let mut tokens = Vec::new();
    loop {
        let (tok, span) = lexer.next()?;
        let done = tok == Tok::Eof;
        tokens.push((tok, span));
        if done {
            break;
        }
    }
    let mut parser = Parser { src, tokens, pos: 0 };
    let (expr, _) = parser.expr(0)?;
    if parser.peek().0 != Tok::Eof {
        return Err(parser.unexpected(AFTER_OPERAND));
    }
    Ok(expr)
}

/// Like [`parse`] for raw bytes; invalid UTF-8 is reported as a parse error.
pub fn parse_bytes(src: &[u8]) -> Result<Expr, ParseError> {
    match core::str::from_utf8(src) {
        Ok(s) => parse(s),
        Err(e) => {
            let at = e.valid_up_to();
            let valid = core::str::from_utf8(&src[..at]).unwrap_or("");
            let len = e.error_len().unwrap_or(src.len() - at);
            Err(make_error(valid, Span::new(at, at + len), &[], "invalid UTF-8"))
        }
    }
}
