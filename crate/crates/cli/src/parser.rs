//! Lexer, parser and name resolution for session files.
//!
//! Declarations may only refer to names declared earlier, so resolution
//! runs during parsing and every diagnostic points at the offending token.

use std::collections::HashMap;
use std::str::FromStr;

use thiserror::Error;

use gorsum_core::{Expr, FormulaId, PrimeField};

use crate::ast::{Arg, Call, Decl, FieldRef, FieldSpec, Pos, Presentation, Session, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: name error: {msg}")]
    Name { pos: Pos, msg: String },
    #[error("{pos}: type error: {msg}")]
    Type { pos: Pos, msg: String },
}

impl SessionError {
    pub fn pos(&self) -> Pos {
        match self {
            SessionError::Syntax { pos, .. } | SessionError::Name { pos, .. } | SessionError::Type { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Arrow,
    EqEq,
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Arrow => "`->`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SessionError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
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
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_alphabetic() || c == '_' {
            while i < chars.len() {
                let d = chars[i];
                let dotted = d == '.' && chars.get(i + 1).is_some_and(|e| e.is_alphabetic() || *e == '_');
                if d.is_alphanumeric() || d == '_' || d == '\'' || dotted {
                    i += 1;
                } else {
                    break;
                }
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| SessionError::Syntax { pos, msg: format!("number {s} is too large") })?;
            Tok::Int(n)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if c == '=' && chars.get(i + 1) == Some(&'=') {
            i += 2;
            Tok::EqEq
        } else if ";=()[],:+-*/^".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(SessionError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        };
        col += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// What a declared name denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Field,
    /// A presented ring with its variables.
    Ring(Vec<String>),
    /// A constructed algebra.
    Alg,
    Map,
    Module,
    ModMap,
}

/// Argument kinds in call signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    Alg,
    Map,
    Module,
    /// A module name or `k` for the residue field.
    ModuleOrK,
    ModMap,
    Int,
    Bool,
    Presentation,
    /// `v -> image`.
    Assign,
    Formula,
}

impl ArgKind {
    fn describe(self) -> &'static str {
        match self {
            ArgKind::Alg => "an algebra",
            ArgKind::Map => "an algebra map",
            ArgKind::Module => "a module",
            ArgKind::ModuleOrK => "a module or `k`",
            ArgKind::ModMap => "a module map",
            ArgKind::Int => "an integer",
            ArgKind::Bool => "`true` or `false`",
            ArgKind::Presentation => "a presentation",
            ArgKind::Assign => "an assignment `v -> image`",
            ArgKind::Formula => "a formula name",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elements {
    No,
    Optional,
    Required,
}

/// Positional arguments `(kind, optional)`, an optional repeated tail,
/// allowed named arguments and whether `; elements` may follow.
#[derive(Debug, Clone, Copy)]
pub struct Signature {
    pub args: &'static [(ArgKind, bool)],
    pub rest: Option<ArgKind>,
    pub named: &'static [(&'static str, ArgKind)],
    pub elements: Elements,
}

const fn sig(args: &'static [(ArgKind, bool)]) -> Signature {
    Signature { args, rest: None, named: &[], elements: Elements::No }
}

use ArgKind as K;

const ALG: &[(ArgKind, bool)] = &[(K::Alg, false)];
const ALG_INT: &[(ArgKind, bool)] = &[(K::Alg, false), (K::Int, false)];

/// Constructions allowed in `let`; the flag says whether the result is a map.
pub fn let_signature(name: &str) -> Option<(Signature, bool)> {
    Some(match name {
        "fiber" => (sig(&[(K::Map, false), (K::Map, false)]), false),
        "fiber_k" => (sig(&[(K::Alg, false), (K::Alg, false)]), false),
        "connect" => (
            sig(&[(K::Map, false), (K::Map, false), (K::Module, false), (K::ModMap, false), (K::ModMap, false)]),
            false,
        ),
        "gorenstein_connect" => (
            Signature {
                named: &[("graded", K::Bool)],
                ..sig(&[(K::Alg, false), (K::Alg, false), (K::Alg, false), (K::Map, false), (K::Map, false)])
            },
            false,
        ),
        "dup" => (Signature { elements: Elements::Required, ..sig(ALG) }, false),
        "split_socle" => (Signature { elements: Elements::Optional, ..sig(ALG) }, false),
        "trivial_extension" => (sig(ALG), false),
        "socle_quotient" => (sig(ALG), true),
        "quotient_map" => (Signature { elements: Elements::Required, ..sig(ALG) }, true),
        "compose" => (sig(&[(K::Map, false), (K::Map, false)]), true),
        _ => return None,
    })
}

pub fn module_signature(name: &str) -> Option<Signature> {
    Some(match name {
        "canonical" => sig(&[(K::Alg, false), (K::Int, true)]),
        "regular" | "residue" => sig(ALG),
        "quotient" => Signature { elements: Elements::Required, ..sig(ALG) },
        _ => return None,
    })
}

pub fn query_signature(name: &str) -> Option<Signature> {
    Some(match name {
        "length" | "hilbert" | "type" | "gorenstein" | "edim" | "a_invariant" | "graded" | "gcl_bounds" | "teter"
        | "hv_epi" => sig(ALG),
        "iso_presentation" => Signature { rest: Some(K::Assign), ..sig(&[(K::Alg, false), (K::Presentation, false)]) },
        "betti" => sig(&[(K::Alg, false), (K::ModuleOrK, true), (K::Int, false)]),
        "golod" => sig(&[(K::Map, false), (K::Int, false)]),
        "deviations" | "ci" => sig(ALG_INT),
        "formula" => Signature { named: &[], ..sig(&[(K::Formula, false)]) },
        _ => return None,
    })
}

const ALG_SUFFIXES: [&str; 10] = ["p", "q", "r", "s", "t", "b", "c", "product", "source", "target"];
const MAP_SUFFIXES: [&str; 6] = ["kappa", "rho", "sigma", "e_r", "e_s", "iso"];
const MODULE_SUFFIXES: [&str; 1] = ["v"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    names: HashMap<String, Kind>,
    field: Option<FieldSpec>,
    /// Names an element expression may use; `None` disables the check.
    scope: Option<Vec<String>>,
}

/// Parses and resolves a session.
pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut p = Parser { toks: lex(text)?, i: 0, names: HashMap::new(), field: None, scope: None };
    let mut session = Session::default();
    while p.peek() != &Tok::Eof {
        let pos = p.pos();
        session.decls.push(p.decl()?);
        session.positions.push(pos);
    }
    Ok(session)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, SessionError> {
        Err(SessionError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, SessionError> {
        self.syntax(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SessionError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn expect_arrow(&mut self) -> Result<(), SessionError> {
        if self.peek() == &Tok::Arrow {
            self.bump();
            Ok(())
        } else {
            self.unexpected("`->`")
        }
    }

    fn ident(&mut self) -> Result<String, SessionError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("a name"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SessionError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.unexpected(&format!("`{kw}`")),
        }
    }

    fn int(&mut self) -> Result<u64, SessionError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a number"),
        }
    }

    fn name_error<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, SessionError> {
        Err(SessionError::Name { pos, msg: msg.into() })
    }

    fn type_error<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, SessionError> {
        Err(SessionError::Type { pos, msg: msg.into() })
    }

    /// A new binding.
    fn binder(&mut self) -> Result<(String, Pos), SessionError> {
        let pos = self.pos();
        let name = self.ident()?;
        if name.contains('.') || name == "k" || name == "QQ" || name == "GF" {
            return self.name_error(pos, format!("`{name}` cannot be declared"));
        }
        if self.names.contains_key(&name) {
            return self.name_error(pos, format!("`{name}` is already declared"));
        }
        Ok((name, pos))
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<Kind, SessionError> {
        if let Some(k) = self.names.get(name) {
            return Ok(k.clone());
        }
        if let Some((base, suffix)) = name.split_once('.') {
            match self.names.get(base) {
                None => return self.name_error(pos, format!("`{base}` is not declared")),
                Some(Kind::Alg | Kind::Map) => {}
                Some(_) => return self.type_error(pos, format!("`{base}` has no parts")),
            }
            if ALG_SUFFIXES.contains(&suffix) {
                return Ok(Kind::Alg);
            }
            if MAP_SUFFIXES.contains(&suffix) {
                return Ok(Kind::Map);
            }
            if MODULE_SUFFIXES.contains(&suffix) {
                return Ok(Kind::Module);
            }
            return self.name_error(pos, format!("unknown part `.{suffix}`"));
        }
        self.name_error(pos, format!("`{name}` is not declared"))
    }

    fn decl(&mut self) -> Result<Decl, SessionError> {
        let pos = self.pos();
        let kw = self.ident()?;
        let d = match kw.as_str() {
            "field" => {
                let (name, _) = self.binder()?;
                self.expect('=')?;
                let spec_pos = self.pos();
                let spec = match self.field_ref()? {
                    FieldRef::Literal(s) => s,
                    FieldRef::Named(_) => return self.syntax_at(spec_pos, "expected `QQ` or `GF(p)`"),
                };
                self.set_field(spec, spec_pos)?;
                self.names.insert(name.clone(), Kind::Field);
                Decl::Field { name, spec }
            }
            "ring" => {
                let (name, _) = self.binder()?;
                self.expect('=')?;
                let presentation = self.presentation()?;
                let vars = presentation.vars.iter().map(|(v, _)| v.clone()).collect();
                self.names.insert(name.clone(), Kind::Ring(vars));
                Decl::Ring { name, presentation }
            }
            "map" => {
                let (name, _) = self.binder()?;
                self.expect(':')?;
                let (source, src_kind) = self.typed_name(&[Kind::Alg], "a ring")?;
                self.expect_arrow()?;
                let (target, tgt_kind) = self.typed_name(&[Kind::Alg], "an algebra")?;
                self.keyword("sends")?;
                let src_vars = match src_kind {
                    Kind::Ring(v) => v,
                    _ => return self.type_error(pos, format!("the source of `{name}` must be a declared ring")),
                };
                let mut sends = Vec::new();
                loop {
                    let vpos = self.pos();
                    let v = self.ident()?;
                    if !src_vars.contains(&v) {
                        return self.name_error(vpos, format!("`{v}` is not a variable of `{source}`"));
                    }
                    if sends.iter().any(|(w, _)| w == &v) {
                        return self.name_error(vpos, format!("`{v}` is assigned twice"));
                    }
                    self.expect_arrow()?;
                    let img = self.scoped_expr(ring_vars(&tgt_kind))?;
                    sends.push((v, img));
                    if !self.eat(',') {
                        break;
                    }
                }
                if let Some(missing) = src_vars.iter().find(|v| !sends.iter().any(|(w, _)| w == *v)) {
                    return self.name_error(self.pos(), format!("no image given for `{missing}`"));
                }
                self.names.insert(name.clone(), Kind::Map);
                Decl::Map { name, source, target, sends }
            }
            "module" => {
                let (name, _) = self.binder()?;
                self.expect('=')?;
                let def = self.call_with(module_signature, "module constructor")?;
                self.names.insert(name.clone(), Kind::Module);
                Decl::Module { name, def }
            }
            "modmap" => {
                let (name, _) = self.binder()?;
                self.expect(':')?;
                let (source, _) = self.typed_name(&[Kind::Module, Kind::Alg], "a module or ring")?;
                self.expect_arrow()?;
                let (target, tgt_kind) = self.typed_name(&[Kind::Alg], "a ring")?;
                self.keyword("over")?;
                let (over, _) = self.typed_name(&[Kind::Map], "an algebra map")?;
                self.keyword("sends")?;
                let mut images = vec![self.scoped_expr(ring_vars(&tgt_kind))?];
                while self.eat(',') {
                    images.push(self.scoped_expr(ring_vars(&tgt_kind))?);
                }
                self.names.insert(name.clone(), Kind::ModMap);
                Decl::ModMap { name, source, target, over, images }
            }
            "let" => {
                let (name, _) = self.binder()?;
                self.expect('=')?;
                let mut is_map = false;
                let def = self.call_with(
                    |n| {
                        let (s, m) = let_signature(n)?;
                        is_map = m;
                        Some(s)
                    },
                    "construction",
                )?;
                self.names.insert(name.clone(), if is_map { Kind::Map } else { Kind::Alg });
                Decl::Let { name, def }
            }
            "check" => {
                let qpos = self.pos();
                let query = match self.value()? {
                    Value::Call(c) => Value::Call(self.check_call(c, qpos, query_signature, "check")?),
                    _ => return self.syntax_at(qpos, "a check starts with a query such as `length(R)`"),
                };
                if self.peek() != &Tok::EqEq {
                    return self.unexpected("`==`");
                }
                self.bump();
                let epos = self.pos();
                let expected = self.value()?;
                let expected = match expected {
                    Value::Call(c) => Value::Call(self.check_call(c, epos, query_signature, "check")?),
                    v => v,
                };
                Decl::Check { query, expected }
            }
            _ => return self.syntax_at(pos, format!("unknown declaration `{kw}`")),
        };
        self.expect(';')?;
        Ok(d)
    }

    fn syntax_at<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, SessionError> {
        Err(SessionError::Syntax { pos, msg: msg.into() })
    }

    fn set_field(&mut self, spec: FieldSpec, pos: Pos) -> Result<(), SessionError> {
        if let FieldSpec::Prime(p) = spec {
            if let Err(e) = PrimeField::new(p) {
                return self.type_error(pos, e.to_string());
            }
        }
        match self.field {
            Some(f) if f != spec => self.type_error(pos, format!("a session uses one field; {f} is already in use")),
            _ => {
                self.field = Some(spec);
                Ok(())
            }
        }
    }

    fn typed_name(&mut self, allowed: &[Kind], what: &str) -> Result<(String, Kind), SessionError> {
        let pos = self.pos();
        let name = self.ident()?;
        let kind = self.lookup(&name, pos)?;
        let ok = allowed.iter().any(|a| match a {
            Kind::Alg => matches!(kind, Kind::Alg | Kind::Ring(_)),
            other => *other == kind,
        });
        if !ok {
            return self.type_error(pos, format!("`{name}` is not {what}"));
        }
        Ok((name, kind))
    }

    fn field_ref(&mut self) -> Result<FieldRef, SessionError> {
        let pos = self.pos();
        let name = self.ident()?;
        match name.as_str() {
            "QQ" => Ok(FieldRef::Literal(FieldSpec::Rationals)),
            "GF" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(')')?;
                Ok(FieldRef::Literal(FieldSpec::Prime(p)))
            }
            _ => match self.names.get(&name) {
                Some(Kind::Field) => Ok(FieldRef::Named(name)),
                Some(_) => self.type_error(pos, format!("`{name}` is not a field")),
                None => self.name_error(pos, format!("`{name}` is not declared")),
            },
        }
    }

    fn presentation(&mut self) -> Result<Presentation, SessionError> {
        let fpos = self.pos();
        let field = self.field_ref()?;
        if let FieldRef::Literal(s) = &field {
            self.set_field(*s, fpos)?;
        }
        self.expect('[')?;
        let mut vars: Vec<(String, u32)> = Vec::new();
        if !self.eat(']') {
            loop {
                let vpos = self.pos();
                let v = self.ident()?;
                if v.contains('.') {
                    return self.syntax_at(vpos, format!("bad variable name `{v}`"));
                }
                if vars.iter().any(|(w, _)| w == &v) {
                    return self.name_error(vpos, format!("variable `{v}` is declared twice"));
                }
                let w = if self.eat(':') {
                    let wpos = self.pos();
                    let w = self.int()?;
                    match u32::try_from(w) {
                        Ok(w) if w > 0 => w,
                        _ => return self.type_error(wpos, "weights are positive integers"),
                    }
                } else {
                    1
                };
                vars.push((v, w));
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let mut relations = Vec::new();
        if self.eat('/') {
            self.expect('(')?;
            let scope: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
            loop {
                relations.push(self.scoped_expr(Some(scope.clone()))?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(Presentation { field, vars, relations })
    }

    fn scoped_expr(&mut self, scope: Option<Vec<String>>) -> Result<Expr, SessionError> {
        let saved = std::mem::replace(&mut self.scope, scope);
        let e = self.expr();
        self.scope = saved;
        e
    }

    fn expr(&mut self) -> Result<Expr, SessionError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SessionError> {
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

    fn unary(&mut self) -> Result<Expr, SessionError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let e = self.int()?;
            let e = u32::try_from(e).or_else(|_| self.syntax_at(pos, format!("exponent {e} is too large")))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SessionError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n = i64::try_from(n).or_else(|_| self.syntax_at(pos, format!("number {n} is too large")))?;
                Ok(Expr::Num(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(scope) = &self.scope {
                    if !scope.contains(&name) {
                        return self.name_error(pos, format!("`{name}` is not declared"));
                    }
                }
                Ok(Expr::Var(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let first = self.expr()?;
                if self.eat(')') {
                    return Ok(first);
                }
                // components of a tuple live in different rings
                let saved = self.scope.take();
                let mut parts = vec![first];
                let res = (|| {
                    while self.eat(',') {
                        parts.push(self.expr()?);
                    }
                    self.expect(')')
                })();
                self.scope = saved;
                res?;
                Ok(Expr::Tuple(parts))
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn value(&mut self) -> Result<Value, SessionError> {
        match self.peek().clone() {
            Tok::Sym('[') => {
                self.bump();
                let mut items = Vec::new();
                if !self.eat(']') {
                    loop {
                        items.push(self.value()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(Value::List(items))
            }
            Tok::Ident(name) => {
                let next = self.peek_at(1).clone();
                let gf_literal = name == "GF"
                    && next == Tok::Sym('(')
                    && matches!(self.peek_at(2), Tok::Int(_))
                    && self.peek_at(3) == &Tok::Sym(')')
                    && self.peek_at(4) == &Tok::Sym('[');
                if next == Tok::Sym('[') || gf_literal {
                    return Ok(Value::Presentation(self.presentation()?));
                }
                match (name.as_str(), &next) {
                    ("true", _) => {
                        self.bump();
                        Ok(Value::Bool(true))
                    }
                    ("false", _) => {
                        self.bump();
                        Ok(Value::Bool(false))
                    }
                    (_, Tok::Arrow) => {
                        self.bump();
                        self.bump();
                        Ok(Value::Assign(name, self.scoped_expr(None)?))
                    }
                    (_, Tok::Sym('(')) => Ok(Value::Call(self.call()?)),
                    _ => Ok(Value::Expr(self.scoped_expr(None)?)),
                }
            }
            _ => Ok(Value::Expr(self.scoped_expr(None)?)),
        }
    }

    fn call(&mut self) -> Result<Call, SessionError> {
        let name = self.ident()?;
        self.expect('(')?;
        let mut args = Vec::new();
        let mut elements = None;
        if !matches!(self.peek(), Tok::Sym(')') | Tok::Sym(';')) {
            loop {
                let is_named = matches!(self.peek(), Tok::Ident(_)) && self.peek_at(1) == &Tok::Sym('=');
                if is_named {
                    let key = self.ident()?;
                    self.bump();
                    args.push(Arg::Named(key, self.value()?));
                } else {
                    args.push(Arg::Positional(self.value()?));
                }
                if !self.eat(',') {
                    break;
                }
            }
        }
        if self.eat(';') {
            let mut els = vec![self.scoped_expr(None)?];
            while self.eat(',') {
                els.push(self.scoped_expr(None)?);
            }
            elements = Some(els);
        }
        self.expect(')')?;
        Ok(Call { name, args, elements })
    }

    fn call_with(&mut self, sig: impl FnMut(&str) -> Option<Signature>, what: &str) -> Result<Call, SessionError> {
        let pos = self.pos();
        if !matches!(self.peek(), Tok::Ident(_)) || self.peek_at(1) != &Tok::Sym('(') {
            return self.unexpected(&format!("a {what}"));
        }
        let c = self.call()?;
        self.check_call(c, pos, sig, what)
    }

    /// Checks a parsed call against its signature.
    fn check_call(
        &self,
        c: Call,
        pos: Pos,
        mut sig: impl FnMut(&str) -> Option<Signature>,
        what: &str,
    ) -> Result<Call, SessionError> {
        let Some(s) = sig(&c.name) else {
            return self.name_error(pos, format!("unknown {what} `{}`", c.name));
        };
        let given: Vec<&Value> = c.positional().collect();
        let required = s.args.iter().filter(|(_, opt)| !opt).count();
        let too_many = s.rest.is_none() && given.len() > s.args.len();
        if given.len() < required || too_many {
            return self.type_error(pos, format!("`{}` takes {} arguments, {} given", c.name, arity(&s), given.len()));
        }
        let mut extra = given.len().saturating_sub(required);
        let mut kinds = Vec::new();
        for (k, opt) in s.args {
            if *opt {
                if extra == 0 {
                    continue;
                }
                extra -= 1;
            }
            kinds.push(*k);
        }
        while kinds.len() < given.len() {
            kinds.push(s.rest.expect("checked above"));
        }
        for (v, k) in given.iter().zip(&kinds) {
            self.check_value(v, *k, pos, &c.name)?;
        }
        let formula = match (c.name.as_str(), given.first()) {
            ("formula", Some(v)) => v.as_name().and_then(|n| FormulaId::from_str(n).ok()),
            _ => None,
        };
        for a in &c.args {
            if let Arg::Named(key, v) = a {
                if let Some(id) = formula {
                    if key == "order" {
                        self.check_value(v, K::Int, pos, &c.name)?;
                    } else if id.roles().contains(&key.as_str()) {
                        self.check_input(v, pos)?;
                    } else {
                        return self.name_error(pos, format!("`{id}` has no input `{key}`"));
                    }
                } else if let Some((_, k)) = s.named.iter().find(|(n, _)| n == key) {
                    self.check_value(v, *k, pos, &c.name)?;
                } else {
                    return self.name_error(pos, format!("`{}` has no option `{key}`", c.name));
                }
            }
        }
        match (s.elements, &c.elements) {
            (Elements::No, Some(_)) => self.type_error(pos, format!("`{}` takes no element list", c.name)),
            (Elements::Required, None) => self.type_error(pos, format!("`{}` needs elements after `;`", c.name)),
            _ => Ok(c),
        }
    }

    /// Formula inputs: integers, lists or series-valued queries.
    fn check_input(&self, v: &Value, pos: Pos) -> Result<(), SessionError> {
        match v {
            Value::List(items) => items.iter().try_for_each(|i| self.check_input(i, pos)),
            Value::Call(c) => self.check_call(c.clone(), pos, query_signature, "query").map(|_| ()),
            v if v.as_int().is_some() => Ok(()),
            _ => self.type_error(pos, format!("`{v}` is not a formula input")),
        }
    }

    fn check_value(&self, v: &Value, k: ArgKind, pos: Pos, func: &str) -> Result<(), SessionError> {
        let bad = || SessionError::Type { pos, msg: format!("`{func}` expects {} here, found `{v}`", k.describe()) };
        match k {
            K::Int => v.as_int().map(|_| ()).ok_or_else(bad),
            K::Bool => matches!(v, Value::Bool(_)).then_some(()).ok_or_else(bad),
            K::Presentation => match v {
                Value::Presentation(_) => Ok(()),
                _ => Err(bad()),
            },
            K::Assign => match v {
                Value::Assign(..) => Ok(()),
                _ => Err(bad()),
            },
            K::Formula => {
                let n = v.as_name().ok_or_else(bad)?;
                FormulaId::from_str(n).map(|_| ()).or_else(|_| self.name_error(pos, format!("unknown formula `{n}`")))
            }
            K::Alg | K::Map | K::Module | K::ModuleOrK | K::ModMap => {
                let n = v.as_name().ok_or_else(bad)?;
                if k == K::ModuleOrK && n == "k" && !self.names.contains_key("k") {
                    return Ok(());
                }
                let kind = self.lookup(n, pos)?;
                let ok = match k {
                    K::Alg => matches!(kind, Kind::Alg | Kind::Ring(_)),
                    K::Map => kind == Kind::Map,
                    K::Module | K::ModuleOrK => kind == Kind::Module,
                    _ => kind == Kind::ModMap,
                };
                ok.then_some(()).ok_or_else(bad)
            }
        }
    }
}

fn arity(s: &Signature) -> String {
    let req = s.args.iter().filter(|(_, o)| !o).count();
    match (s.rest, req == s.args.len()) {
        (Some(_), _) => format!("at least {req}"),
        (None, true) => req.to_string(),
        (None, false) => format!("{req} to {}", s.args.len()),
    }
}

fn ring_vars(kind: &Kind) -> Option<Vec<String>> {
    match kind {
        Kind::Ring(v) => Some(v.clone()),
        _ => None,
    }
}
