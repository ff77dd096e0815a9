//! A small expression language for functions of one variable `x`.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/" | ".*" | "./") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = primary [ ("^" | ".^") unary ] ;
//! primary = number [ "i" ] | "i" | "x" | "pi"
//!         | name "(" expr ")" | "(" expr ")" ;
//! number  = digits [ "." [ digits ] ] [ exponent ] | "." digits [ exponent ] ;
//! name    = "exp" | "sin" | "cos" | "tan" | "log" | "sqrt" | "abs"
//!         | "sinh" | "cosh" | "tanh" | "acos" | "asin" | "atan" ;
//! ```
//!
//! A number directly followed by `i` (as in `.03i`) is the product of the
//! number and the imaginary unit. Evaluation is complex throughout, and
//! purely real subexpressions stay exactly real.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Function {
    Exp,
    Sin,
    Cos,
    Tan,
    Log,
    Sqrt,
    Abs,
    Sinh,
    Cosh,
    Tanh,
    Acos,
    Asin,
    Atan,
}

impl Function {
    pub const ALL: [Function; 13] = [
        Function::Exp,
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Log,
        Function::Sqrt,
        Function::Abs,
        Function::Sinh,
        Function::Cosh,
        Function::Tanh,
        Function::Acos,
        Function::Asin,
        Function::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
            Function::Sinh => "sinh",
            Function::Cosh => "cosh",
            Function::Tanh => "tanh",
            Function::Acos => "acos",
            Function::Asin => "asin",
            Function::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    ImaginaryUnit,
    Var,
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnknownFunction(String),
    UnknownIdentifier(String),
    UnbalancedParen,
    UnexpectedToken(String),
    UnexpectedEnd,
    NumberOutOfRange,
    TooDeep,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnknownFunction(n) => write!(f, "unknown function '{n}'"),
            ParseErrorKind::UnknownIdentifier(n) => write!(f, "unknown identifier '{n}'"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parentheses"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected '{t}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::NumberOutOfRange => write!(f, "number out of range"),
            ParseErrorKind::TooDeep => write!(f, "expression nested too deeply"),
        }
    }
}

/// Parse failure at a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    ImagNum(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(v) => format!("{v:?}"),
            Tok::ImagNum(v) => format!("{v:?}i"),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let err = |column: usize, kind| ParseError { column, kind };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let peek = |k: usize| chars.get(i + k).copied();
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '.' if matches!(peek(1), Some('*' | '/' | '^')) => {
                let tok = match peek(1) {
                    Some('*') => Tok::Star,
                    Some('/') => Tok::Slash,
                    _ => Tok::Caret,
                };
                out.push((tok, col));
                i += 2;
            }
            _ if c.is_ascii_digit()
                || (c == '.' && peek(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // A '.' that starts an elementwise operator is not a decimal point.
                if i < chars.len()
                    && chars[i] == '.'
                    && !matches!(chars.get(i + 1), Some('*' | '/' | '^'))
                {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                    let mut k = i + 1;
                    if k < chars.len() && matches!(chars[k], '+' | '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        i = k;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| err(start + 1, ParseErrorKind::UnexpectedChar(chars[start])))?;
                if !value.is_finite() {
                    return Err(err(start + 1, ParseErrorKind::NumberOutOfRange));
                }
                let imag = i < chars.len()
                    && chars[i] == 'i'
                    && !chars
                        .get(i + 1)
                        .is_some_and(|d| d.is_alphanumeric() || *d == '_');
                if imag {
                    i += 1;
                    out.push((Tok::ImagNum(value), start + 1));
                } else {
                    out.push((Tok::Num(value), start + 1));
                }
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
            }
            _ => return Err(err(col, ParseErrorKind::UnexpectedChar(c))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            column: self.column(),
            kind,
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinaryOp::Add,
                Some(Tok::Minus) => BinaryOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinaryOp::Mul,
                Some(Tok::Slash) => BinaryOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let e = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Expr::Neg(Box::new(self.unary()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()?
            }
            _ => self.power()?,
        };
        self.depth -= 1;
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Number(v)),
            Some(Tok::ImagNum(v)) => Ok(Expr::Binary(
                BinaryOp::Mul,
                Box::new(Expr::Number(v)),
                Box::new(Expr::ImaginaryUnit),
            )),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "i" => Ok(Expr::ImaginaryUnit),
                "pi" => Ok(Expr::Number(PI)),
                _ => {
                    let Some(func) = Function::from_name(&name) else {
                        let kind = if self.peek() == Some(&Tok::LParen) {
                            ParseErrorKind::UnknownFunction(name)
                        } else {
                            ParseErrorKind::UnknownIdentifier(name)
                        };
                        return Err(ParseError { column, kind });
                    };
                    if self.peek() != Some(&Tok::LParen) {
                        return Err(self.error(match self.peek() {
                            Some(t) => ParseErrorKind::UnexpectedToken(t.text()),
                            None => ParseErrorKind::UnexpectedEnd,
                        }));
                    }
                    let open = self.column();
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.close(open)?;
                    Ok(Expr::Call(func, Box::new(arg)))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.close(column)?;
                Ok(inner)
            }
            Some(Tok::RParen) => Err(ParseError {
                column,
                kind: ParseErrorKind::UnbalancedParen,
            }),
            Some(t) => Err(ParseError {
                column,
                kind: ParseErrorKind::UnexpectedToken(t.text()),
            }),
            None => Err(ParseError {
                column,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
        }
    }

    fn close(&mut self, open_column: usize) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            None => Err(ParseError {
                column: open_column,
                kind: ParseErrorKind::UnbalancedParen,
            }),
            Some(t) => Err(self.error(ParseErrorKind::UnexpectedToken(t.text()))),
        }
    }
}

/// Parses an expression in `x`.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_column: src.chars().count() + 1,
        depth: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(Tok::RParen) => Err(p.error(ParseErrorKind::UnbalancedParen)),
        Some(t) => Err(p.error(ParseErrorKind::UnexpectedToken(t.text()))),
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn apply(func: Function, z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        let x = z.re;
        let r = match func {
            Function::Exp => Some(x.exp()),
            Function::Sin => Some(x.sin()),
            Function::Cos => Some(x.cos()),
            Function::Tan => Some(x.tan()),
            Function::Sinh => Some(x.sinh()),
            Function::Cosh => Some(x.cosh()),
            Function::Tanh => Some(x.tanh()),
            Function::Atan => Some(x.atan()),
            Function::Abs => Some(x.abs()),
            Function::Log if x >= 0.0 => Some(x.ln()),
            Function::Sqrt if x >= 0.0 => Some(x.sqrt()),
            Function::Acos if x.abs() <= 1.0 => Some(x.acos()),
            Function::Asin if x.abs() <= 1.0 => Some(x.asin()),
            _ if x.is_nan() => Some(f64::NAN),
            _ => None,
        };
        if let Some(r) = r {
            return real(r);
        }
    }
    match func {
        Function::Exp => z.exp(),
        Function::Sin => z.sin(),
        Function::Cos => z.cos(),
        Function::Tan => z.tan(),
        Function::Log => z.ln(),
        Function::Sqrt => z.sqrt(),
        Function::Abs => real(z.norm()),
        Function::Sinh => z.sinh(),
        Function::Cosh => z.cosh(),
        Function::Tanh => z.tanh(),
        Function::Acos => z.acos(),
        Function::Asin => z.asin(),
        Function::Atan => z.atan(),
    }
}

fn binary(op: BinaryOp, a: Complex64, b: Complex64) -> Complex64 {
    if a.im == 0.0 && b.im == 0.0 {
        let (x, y) = (a.re, b.re);
        match op {
            BinaryOp::Add => return real(x + y),
            BinaryOp::Sub => return real(x - y),
            BinaryOp::Mul => return real(x * y),
            BinaryOp::Div => return real(x / y),
            BinaryOp::Pow => {
                if x >= 0.0 || y.fract() == 0.0 || !y.is_finite() || x.is_nan() {
                    return real(x.powf(y));
                }
            }
        }
    }
    match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => a / b,
        BinaryOp::Pow => {
            if b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() <= i32::MAX as f64 {
                a.powi(b.re as i32)
            } else if a == Complex64::new(0.0, 0.0) {
                // principal branch: 0^b is 0 for Re(b) > 0
                if b.re > 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(f64::NAN, f64::NAN)
                }
            } else {
                a.powc(b)
            }
        }
    }
}

impl Expr {
    /// Evaluates the expression at `x`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            Expr::Number(v) => real(*v),
            Expr::ImaginaryUnit => Complex64::new(0.0, 1.0),
            Expr::Var => x,
            Expr::Neg(e) => {
                let v = e.eval(x);
                if v.im == 0.0 {
                    real(-v.re)
                } else {
                    -v
                }
            }
            Expr::Binary(op, a, b) => binary(*op, a.eval(x), b.eval(x)),
            Expr::Call(f, a) => apply(*f, a.eval(x)),
        }
    }

    /// Evaluates at a real `x`.
    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(real(x))
    }
}

/// Evaluates `ast` at `x`.
pub fn eval_ast(ast: &Expr, x: Complex64) -> Complex64 {
    ast.eval(x)
}

/// Fully parenthesized, re-parseable rendering.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v:?}"),
            Expr::ImaginaryUnit => write!(f, "i"),
            Expr::Var => write!(f, "x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
