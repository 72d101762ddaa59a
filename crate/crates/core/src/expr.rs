//! Coordinate-function expressions: tokenizer, recursive-descent parser,
//! printer and evaluator.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = primary [ "^" unary ] ;        (* exponent must be constant *)
//! primary  = number | "pi" | variable | func "(" expr ")" | "(" expr ")" ;
//! func     = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" ;
//! variable = "u" | "v" | "w"                (* parametric mode *)
//!          | "x" | "y" | "z" | "t" ;        (* implicit mode *)
//! number   = digit { digit } [ "." { digit } ] [ ("e" | "E") [ "+" | "-" ] digit { digit } ] ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-u^2` is `-(u^2)`, and it is
//! right-associative. The exponent is folded to a constant at parse time.
//! Implicit multiplication is not supported.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::{DomainError, Jet2, Scalar};

/// Which variable set an expression may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Surface parameters `u, v, w`.
    Parametric,
    /// Ambient coordinates `x, y, z, t`.
    Implicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
    W,
    X,
    Y,
    Z,
    T,
}

impl Var {
    fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "u" => Var::U,
            "v" => Var::V,
            "w" => Var::W,
            "x" => Var::X,
            "y" => Var::Y,
            "z" => Var::Z,
            "t" => Var::T,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::T => "t",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Var::U | Var::V | Var::W => Mode::Parametric,
            _ => Mode::Implicit,
        }
    }

    /// Position in the evaluation environment (`u,v,w` → 0..3, `x,y,z,t` → 0..4).
    pub fn index(self) -> usize {
        match self {
            Var::U | Var::X => 0,
            Var::V | Var::Y => 1,
            Var::W | Var::Z => 2,
            Var::T => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    fn apply<T: Scalar>(self, x: T) -> Result<T, DomainError> {
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Exp => x.exp(),
            Func::Log => x.ln()?,
            Func::Sqrt => x.sqrt()?,
        })
    }
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("variable `{name}` at offset {offset} is not allowed in {mode:?} mode")]
    WrongModeVariable { name: String, offset: usize, mode: Mode },
    #[error("exponent at offset {offset} must be a constant")]
    NonConstantExponent { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("variable `{}` is not bound", .0.name())]
    Unbound(Var),
}

impl Expr {
    pub fn parse(text: &str, mode: Mode) -> Result<Expr, ParseError> {
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut p = Parser {
            tokens,
            pos: 0,
            mode,
            end: text.len(),
        };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some(tok) => Err(tok.unexpected()),
        }
    }

    /// Evaluate over any [`Scalar`]; `env[var.index()]` supplies each variable.
    pub fn eval<T: Scalar>(&self, env: &[T]) -> Result<T, EvalError> {
        Ok(match self {
            Expr::Const(c) => T::constant(*c),
            Expr::Var(v) => *env.get(v.index()).ok_or(EvalError::Unbound(*v))?,
            Expr::Unary(UnaryOp::Neg, e) => -e.eval(env)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval(env)?;
                match op {
                    BinOp::Pow => {
                        let Expr::Const(p) = **r else {
                            unreachable!("parser folds exponents to constants")
                        };
                        a.pow(p)?
                    }
                    BinOp::Add => a + r.eval(env)?,
                    BinOp::Sub => a - r.eval(env)?,
                    BinOp::Mul => a * r.eval(env)?,
                    BinOp::Div => a.checked_div(r.eval(env)?)?,
                }
            }
            Expr::Call(f, e) => f.apply(e.eval(env)?)?,
        })
    }

    pub fn eval_scalar(&self, env: &[f64]) -> Result<f64, EvalError> {
        self.eval(env)
    }

    pub fn eval_jet(&self, env: &[Jet2]) -> Result<Jet2, EvalError> {
        self.eval(env)
    }

    /// Variables occurring in the expression, in first-occurrence order.
    pub fn variables(&self) -> Vec<Var> {
        fn walk(e: &Expr, out: &mut Vec<Var>) {
            match e {
                Expr::Const(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(*v);
                    }
                }
                Expr::Unary(_, c) | Expr::Call(_, c) => walk(c, out),
                Expr::Binary(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn mode(&self) -> Option<Mode> {
        self.variables().first().map(|v| v.mode())
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Unary(..) => 3,
            Expr::Binary(BinOp::Pow, ..) => 4,
            Expr::Const(c) if *c < 0.0 || c.is_sign_negative() => 3,
            _ => 5,
        }
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    if c.is_sign_negative() {
        write!(f, "(-{})", ryu::Buffer::new().format(-c))
    } else {
        f.write_str(ryu::Buffer::new().format(c))
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints with the minimum parentheses needed to reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write_number(f, *c),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Unary(UnaryOp::Neg, e) => {
                f.write_str("-")?;
                write_child(f, e, e.precedence() < 3)
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Binary(op, l, r) => {
                let p = self.precedence();
                if *op == BinOp::Pow {
                    write_child(f, l, l.precedence() <= p)?;
                    f.write_str("^")?;
                    return write_child(f, r, r.precedence() < 3);
                }
                write_child(f, l, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, r, r.precedence() <= p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

impl Token {
    fn unexpected(&self) -> ParseError {
        let what = match &self.kind {
            TokenKind::Number(n) => format!("unexpected number {n}"),
            TokenKind::Ident(s) => format!("unexpected identifier `{s}`"),
            TokenKind::Plus => "unexpected `+`".into(),
            TokenKind::Minus => "unexpected `-`".into(),
            TokenKind::Star => "unexpected `*`".into(),
            TokenKind::Slash => "unexpected `/`".into(),
            TokenKind::Caret => "unexpected `^`".into(),
            TokenKind::LParen => "unexpected `(`".into(),
            TokenKind::RParen => "unexpected `)`".into(),
        };
        ParseError::Syntax {
            offset: self.offset,
            message: what,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'/' => TokenKind::Slash,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let value: f64 = lit.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{lit}`"),
                })?;
                if !value.is_finite() {
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: format!("number `{lit}` is out of range"),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    offset: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    offset: start,
                });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        tokens.push(Token { kind, offset: start });
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    mode: Mode,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t.kind == kind => Ok(()),
            Some(t) => Err(ParseError::Syntax {
                offset: t.offset,
                message: format!("expected {what}"),
            }),
            None => Err(ParseError::Syntax {
                offset: self.end,
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(TokenKind::Minus) = self.peek_kind() {
            self.pos += 1;
            let e = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(e)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Some(TokenKind::Caret) = self.peek_kind() {
            self.pos += 1;
            let offset = self.offset();
            let exponent = self.unary()?;
            if !exponent.variables().is_empty() {
                return Err(ParseError::NonConstantExponent { offset });
            }
            let value = exponent.eval_scalar(&[]).map_err(|e| ParseError::Syntax {
                offset,
                message: format!("exponent cannot be evaluated: {e}"),
            })?;
            if !value.is_finite() {
                return Err(ParseError::Syntax {
                    offset,
                    message: "exponent is not finite".into(),
                });
            }
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(Expr::Const(value))));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.next() else {
            return Err(ParseError::Syntax {
                offset: self.end,
                message: "unexpected end of input".into(),
            });
        };
        match tok.kind {
            TokenKind::Number(n) => Ok(Expr::Const(n)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                if name == "pi" {
                    return Ok(Expr::Const(std::f64::consts::PI));
                }
                if let Some(v) = Var::from_name(&name) {
                    if v.mode() != self.mode {
                        return Err(ParseError::WrongModeVariable {
                            name,
                            offset: tok.offset,
                            mode: self.mode,
                        });
                    }
                    return Ok(Expr::Var(v));
                }
                if let Some(func) = Func::from_name(&name) {
                    self.expect(TokenKind::LParen, &format!("`(` after `{name}`"))?;
                    let arg = self.expr()?;
                    self.expect(TokenKind::RParen, "`)`")?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                Err(ParseError::UnknownIdentifier {
                    name,
                    offset: tok.offset,
                })
            }
            _ => Err(tok.unexpected()),
        }
    }
}
