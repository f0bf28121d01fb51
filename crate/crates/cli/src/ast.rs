//! Syntax tree of session files and its canonical pretty printer.

use std::fmt;

use gorsum_core::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field named by a declaration or written inline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldRef {
    Named(String),
    Literal(FieldSpec),
}

impl fmt::Display for FieldRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldRef::Named(n) => write!(f, "{n}"),
            FieldRef::Literal(s) => write!(f, "{s}"),
        }
    }
}

/// `F[x:1, y:2]/(rel, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldRef,
    pub vars: Vec<(String, u32)>,
    pub relations: Vec<Expr>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, (v, w)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{w}")?;
        }
        write!(f, "]")?;
        if !self.relations.is_empty() {
            write!(f, "/(")?;
            write_list(f, &self.relations)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Argument values of constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    /// Numbers, names (`R`, `Q.kappa`) and element expressions.
    Expr(Expr),
    List(Vec<Value>),
    Call(Call),
    Presentation(Presentation),
    /// `u -> (x, y)`: the image of a presentation variable.
    Assign(String, Expr),
}

impl Value {
    pub fn as_name(&self) -> Option<&str> {
        match self {
            Value::Expr(Expr::Var(n)) => Some(n),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Expr(Expr::Num(n)) => Some(*n),
            Value::Expr(Expr::Neg(inner)) => match inner.as_ref() {
                Expr::Num(n) => Some(-n),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Expr(e) => write!(f, "{e}"),
            Value::List(items) => {
                write!(f, "[")?;
                write_list(f, items)?;
                write!(f, "]")
            }
            Value::Call(c) => write!(f, "{c}"),
            Value::Presentation(p) => write!(f, "{p}"),
            Value::Assign(v, e) => write!(f, "{v} -> {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Positional(Value),
    Named(String, Value),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Positional(v) => write!(f, "{v}"),
            Arg::Named(n, v) => write!(f, "{n} = {v}"),
        }
    }
}

/// `name(args; elements)`; the part after `;` lists ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub name: String,
    pub args: Vec<Arg>,
    pub elements: Option<Vec<Expr>>,
}

impl Call {
    pub fn positional(&self) -> impl Iterator<Item = &Value> {
        self.args.iter().filter_map(|a| match a {
            Arg::Positional(v) => Some(v),
            Arg::Named(..) => None,
        })
    }

    pub fn named(&self, key: &str) -> Option<&Value> {
        self.args.iter().find_map(|a| match a {
            Arg::Named(n, v) if n == key => Some(v),
            _ => None,
        })
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        write_list(f, &self.args)?;
        if let Some(els) = &self.elements {
            write!(f, "; ")?;
            write_list(f, els)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Field { name: String, spec: FieldSpec },
    Ring { name: String, presentation: Presentation },
    Map { name: String, source: String, target: String, sends: Vec<(String, Expr)> },
    Module { name: String, def: Call },
    ModMap { name: String, source: String, target: String, over: String, images: Vec<Expr> },
    Let { name: String, def: Call },
    Check { query: Value, expected: Value },
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match self {
            Decl::Field { name, .. }
            | Decl::Ring { name, .. }
            | Decl::Map { name, .. }
            | Decl::Module { name, .. }
            | Decl::ModMap { name, .. }
            | Decl::Let { name, .. } => Some(name),
            Decl::Check { .. } => None,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Field { .. } => "field",
            Decl::Ring { .. } => "ring",
            Decl::Map { .. } => "map",
            Decl::Module { .. } => "module",
            Decl::ModMap { .. } => "modmap",
            Decl::Let { .. } => "let",
            Decl::Check { .. } => "check",
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Field { name, spec } => write!(f, "field {name} = {spec};"),
            Decl::Ring { name, presentation } => write!(f, "ring {name} = {presentation};"),
            Decl::Map { name, source, target, sends } => {
                write!(f, "map {name} : {source} -> {target} sends ")?;
                for (i, (v, e)) in sends.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v} -> {e}")?;
                }
                write!(f, ";")
            }
            Decl::Module { name, def } => write!(f, "module {name} = {def};"),
            Decl::ModMap { name, source, target, over, images } => {
                write!(f, "modmap {name} : {source} -> {target} over {over} sends ")?;
                write_list(f, images)?;
                write!(f, ";")
            }
            Decl::Let { name, def } => write!(f, "let {name} = {def};"),
            Decl::Check { query, expected } => write!(f, "check {query} == {expected};"),
        }
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A parsed session. Equality ignores source positions.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub decls: Vec<Decl>,
    pub positions: Vec<Pos>,
}

impl PartialEq for Session {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl Eq for Session {}

impl Session {
    /// The session's field: the first field declaration or inline literal.
    pub fn field(&self) -> Option<FieldSpec> {
        self.decls.iter().find_map(|d| match d {
            Decl::Field { spec, .. } => Some(*spec),
            Decl::Ring { presentation: Presentation { field: FieldRef::Literal(s), .. }, .. } => Some(*s),
            _ => None,
        })
    }

    pub fn checks(&self) -> usize {
        self.decls.iter().filter(|d| matches!(d, Decl::Check { .. })).count()
    }
}

/// One declaration per line.
impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
