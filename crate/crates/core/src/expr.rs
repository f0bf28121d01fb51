//! Arithmetic expressions over named variables.
//!
//! Used for relations, map images and module-map images. Evaluation is
//! generic over anything implementing [`ExprTarget`], so the same expression
//! can become a polynomial or an algebra element.

use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division is only by constants.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `(a, b)`: an element of a fiber product given by its two components.
    Tuple(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by a non-constant expression")]
    NonConstantDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("tuple of {0} components is not an element here")]
    UnexpectedTuple(usize),
    #[error("{0}")]
    Target(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Something expressions can be evaluated into.
pub trait ExprTarget {
    type F: Field;
    type Value: Clone;

    fn field(&self) -> &Self::F;
    fn constant(&self, c: <Self::F as Field>::Elem) -> Self::Value;
    fn variable(&self, name: &str) -> Result<Self::Value, ExprError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, c: &<Self::F as Field>::Elem, a: &Self::Value) -> Self::Value;

    fn tuple(&self, parts: &[Expr]) -> Result<Self::Value, ExprError> {
        Err(ExprError::UnexpectedTuple(parts.len()))
    }
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Names of all variables, in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Tuple(parts) => parts.iter().for_each(|p| p.collect_vars(out)),
        }
    }

    /// Value of a variable-free expression in the field.
    pub fn eval_const<F: Field>(&self, field: &F) -> Result<F::Elem, ExprError> {
        Ok(match self {
            Expr::Num(n) => field.from_i64(*n),
            Expr::Var(_) | Expr::Tuple(_) => return Err(ExprError::NonConstantDivisor),
            Expr::Neg(a) => field.neg(&a.eval_const(field)?),
            Expr::Add(a, b) => field.add(&a.eval_const(field)?, &b.eval_const(field)?),
            Expr::Sub(a, b) => field.sub(&a.eval_const(field)?, &b.eval_const(field)?),
            Expr::Mul(a, b) => field.mul(&a.eval_const(field)?, &b.eval_const(field)?),
            Expr::Div(a, b) => {
                let d = field.inv(&b.eval_const(field)?).ok_or(ExprError::DivisionByZero)?;
                field.mul(&a.eval_const(field)?, &d)
            }
            Expr::Pow(a, e) => {
                let base = a.eval_const(field)?;
                let mut acc = field.one();
                for _ in 0..*e {
                    acc = field.mul(&acc, &base);
                }
                acc
            }
        })
    }

    pub fn eval<T: ExprTarget>(&self, t: &T) -> Result<T::Value, ExprError> {
        let f = t.field();
        Ok(match self {
            Expr::Num(n) => t.constant(f.from_i64(*n)),
            Expr::Var(v) => t.variable(v)?,
            Expr::Neg(a) => t.scale(&f.from_i64(-1), &a.eval(t)?),
            Expr::Add(a, b) => t.add(&a.eval(t)?, &b.eval(t)?),
            Expr::Sub(a, b) => {
                let nb = t.scale(&f.from_i64(-1), &b.eval(t)?);
                t.add(&a.eval(t)?, &nb)
            }
            Expr::Mul(a, b) => t.mul(&a.eval(t)?, &b.eval(t)?),
            Expr::Div(a, b) => {
                let d = b.eval_const(f)?;
                let inv = f.inv(&d).ok_or(ExprError::DivisionByZero)?;
                t.scale(&inv, &a.eval(t)?)
            }
            Expr::Pow(a, e) => {
                let base = a.eval(t)?;
                let mut acc = t.constant(f.one());
                let mut sq = base;
                let mut k = *e;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = t.mul(&acc, &sq);
                    }
                    k >>= 1;
                    if k > 0 {
                        sq = t.mul(&sq, &sq);
                    }
                }
                acc
            }
            Expr::Tuple(parts) => t.tuple(parts)?,
        })
    }

    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        let mut p = ExprParser::new(src, 1, 1);
        let e = p.expr()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected `{c}`")));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(n) if *n < 0 => 2,
            _ => 5,
        }
    }
}

fn write_sub(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_sub(f, a, 4)
            }
            Expr::Add(a, b) => {
                write_sub(f, a, 1)?;
                write!(f, " + ")?;
                write_sub(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_sub(f, a, 1)?;
                write!(f, " - ")?;
                write_sub(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_sub(f, a, 3)?;
                write!(f, "*")?;
                write_sub(f, b, 4)
            }
            Expr::Div(a, b) => {
                write_sub(f, a, 3)?;
                write!(f, "/")?;
                write_sub(f, b, 4)
            }
            Expr::Pow(a, e) => {
                write_sub(f, a, 5)?;
                write!(f, "^{e}")
            }
            Expr::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Recursive-descent parser for expressions; also used by the session
/// language, which hands it slices together with their source position.
pub struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> ExprParser<'a> {
    pub fn new(src: &'a str, line: usize, col: usize) -> Self {
        ExprParser { chars: src.chars().collect(), pos: 0, line, col, _src: src }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn error(&self, msg: String) -> ParseError {
        ParseError { line: self.line, col: self.col, msg }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_minus_operator() {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    // `-` followed by `>` is an arrow, not subtraction
    fn peek_minus_operator(&mut self) -> bool {
        self.skip_ws();
        self.peek() == Some('-') && self.chars.get(self.pos + 1) != Some(&'>')
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek_minus_operator() {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let n = self.number()?;
            let e = u32::try_from(n).map_err(|_| self.error(format!("bad exponent {n}")))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<i64, ParseError> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(self.error("expected a number".into()));
        }
        s.parse().map_err(|_| self.error(format!("number {s} is too large")))
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let ok =
                if s.is_empty() { c.is_alphabetic() || c == '_' } else { c.is_alphanumeric() || c == '_' || c == '\'' };
            if !ok {
                break;
            }
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(self.error(match self.peek() {
                Some(c) => format!("expected a name, found `{c}`"),
                None => "expected a name, found end of input".into(),
            }));
        }
        Ok(s)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let first = self.expr()?;
                if self.eat(')') {
                    return Ok(first);
                }
                let mut parts = vec![first];
                while self.eat(',') {
                    parts.push(self.expr()?);
                }
                if !self.eat(')') {
                    return Err(self.error("expected `)`".into()));
                }
                Ok(Expr::Tuple(parts))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(self.number()?)),
            Some(c) if c.is_alphabetic() || c == '_' => Ok(Expr::Var(self.ident()?)),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn parses_with_precedence() {
        let e = Expr::parse("x^2 - 2*y^2 + 3").unwrap();
        assert_eq!(e.to_string(), "x^2 - 2*y^2 + 3");
        assert_eq!(e.variables(), vec!["x", "y"]);
        let e = Expr::parse("-(x + y)*z").unwrap();
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn tuples_and_errors() {
        let e = Expr::parse("(x, y^2)").unwrap();
        assert!(matches!(e, Expr::Tuple(ref p) if p.len() == 2));
        let err = Expr::parse("x +").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(Expr::parse("x ^ y").is_err());
    }

    #[test]
    fn constants() {
        let q = Rationals;
        let e = Expr::parse("(1 + 2)^2/6").unwrap();
        assert_eq!(q.format(&e.eval_const(&q).unwrap()), "3/2");
        assert_eq!(Expr::parse("1/0").unwrap().eval_const(&q), Err(ExprError::DivisionByZero));
    }
}
