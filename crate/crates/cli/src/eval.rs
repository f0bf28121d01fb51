//! Evaluation of parsed sessions over a concrete field.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use gorsum_core::algebra::{check_presentation_iso, ElementScope, Vector};
use gorsum_core::colength::trivial_extension_cover;
use gorsum_core::random::fiber_product_over_k;
use gorsum_core::sums::{Grading, SocleSplitting};
use gorsum_core::{
    amalgamated_duplication, connected_sum, deviations, evaluate_formula, fiber_product, gcl_bounds,
    gcl_bounds_fiber_product, golod_test, gorenstein_connected_sum, hv_epi_search, minimal_free_resolution,
    split_socle, teter_test, AlgebraError, AlgebraMorphism, CiVerdict, ColengthError, ColengthReport,
    ConnectedSumDiagram, Expr, ExprError, FdAlgebra, FdModule, FiberProduct, Field, FormulaId, FormulaInput,
    FormulaInputs, Matrix, ModuleMorphism, PolyError, PolyRing, ResolutionError, SeriesError, SumResult, SumsError,
    TruncatedSeries,
};

use crate::ast::{Arg, Call, Decl, Presentation, Value};

/// Candidate epimorphisms tried by `hv_epi`.
pub const HV_BUDGET: usize = 64;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("`{0}` is unavailable because its declaration failed")]
    Unavailable(String),
    #[error("`{name}` is not {expected}")]
    Kind { name: String, expected: &'static str },
    #[error("`{0}` has no part `{1}`")]
    NoPart(String, String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sums(#[from] SumsError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Colength(#[from] ColengthError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Invalid(msg.into()))
}

/// Results of queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Val {
    Bool(bool),
    Int(i128),
    List(Vec<Val>),
}

impl Val {
    fn ints<T: Copy + Into<i128>>(xs: &[T]) -> Val {
        Val::List(xs.iter().map(|&x| Val::Int(x.into())).collect())
    }

    fn as_ints(&self) -> Option<Vec<i128>> {
        match self {
            Val::Int(n) => Some(vec![*n]),
            Val::List(items) => items
                .iter()
                .map(|v| match v {
                    Val::Int(n) => Some(*n),
                    _ => None,
                })
                .collect(),
            Val::Bool(_) => None,
        }
    }

    /// Equality where integer lists may differ by trailing zeros.
    pub fn matches(&self, other: &Val) -> bool {
        match (self, other) {
            (Val::List(a), Val::List(b)) => {
                let n = a.len().max(b.len());
                (0..n).all(|i| match (a.get(i), b.get(i)) {
                    (Some(x), Some(y)) => x.matches(y),
                    (Some(Val::Int(0)), None) | (None, Some(Val::Int(0))) => true,
                    _ => false,
                })
            }
            _ => self == other,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Bool(b) => write!(f, "{b}"),
            Val::Int(n) => write!(f, "{n}"),
            Val::List(items) => {
                write!(f, "[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// A query result with an optional explanation.
#[derive(Debug, Clone)]
pub struct Answer {
    pub value: Val,
    pub note: Option<String>,
}

impl From<Val> for Answer {
    fn from(value: Val) -> Self {
        Answer { value, note: None }
    }
}

/// Evaluated bindings.
#[derive(Debug, Clone)]
pub enum Item<F: Field> {
    Field,
    Ring(Arc<FdAlgebra<F>>),
    Map(AlgebraMorphism<F>),
    Module(FdModule<F>),
    ModMap(ModuleMorphism<F>),
    Fiber(FiberProduct<F>),
    Sum(Box<SumResult<F>>, Box<ConnectedSumDiagram<F>>),
    Split(SocleSplitting<F>),
}

/// Where element expressions are evaluated: tuples resolve through a fiber
/// product or a connected sum.
enum Space<'a, F: Field> {
    Plain(Arc<FdAlgebra<F>>),
    Fiber(&'a FiberProduct<F>),
    Sum(&'a SumResult<F>),
}

fn pair<F: Field>(fp: &FiberProduct<F>, parts: &[Expr]) -> Result<(Vector<F>, Vector<F>), ExprError> {
    if parts.len() != 2 {
        return Err(ExprError::UnexpectedTuple(parts.len()));
    }
    Ok((fp.e_r().source().eval(&parts[0])?, fp.e_s().source().eval(&parts[1])?))
}

const DISAGREE: &str = "the components of a pair must agree in T";

impl<F: Field> Space<'_, F> {
    fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        match self {
            Space::Plain(a) => a,
            Space::Fiber(fp) => fp.algebra(),
            Space::Sum(s) => s.q(),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Vector<F>, EvalError> {
        Ok(match self {
            Space::Plain(a) => a.eval(e)?,
            Space::Fiber(fp) => {
                let fp = *fp;
                let scope = ElementScope::new(fp.algebra()).with_tuple(move |parts| {
                    let (r, s) = pair(fp, parts)?;
                    fp.element(&r, &s).ok_or_else(|| ExprError::Target(DISAGREE.into()))
                });
                e.eval(&scope)?
            }
            Space::Sum(res) => {
                let res = *res;
                let scope = ElementScope::new(res.q()).with_tuple(move |parts| {
                    let (r, s) = pair(res.fiber(), parts)?;
                    res.element(&r, &s).ok_or_else(|| ExprError::Target(DISAGREE.into()))
                });
                e.eval(&scope)?
            }
        })
    }
}

/// Limits applied to homological computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Default series truncation.
    pub order: usize,
    /// Largest free module, in k-dimensions, a resolution may build.
    pub budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { order: 6, budget: gorsum_core::DEFAULT_BUDGET }
    }
}

/// Bindings of a session evaluated over `F`.
pub struct Env<F: Field> {
    field: F,
    items: HashMap<String, Item<F>>,
    failed: Vec<String>,
    /// Names of algebra-valued bindings in declaration order.
    algebras: Vec<String>,
    maps: Vec<String>,
    pub limits: Limits,
}

impl<F: Field> Env<F> {
    pub fn new(field: F, limits: Limits) -> Self {
        Env { field, items: HashMap::new(), failed: Vec::new(), algebras: Vec::new(), maps: Vec::new(), limits }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn algebra_names(&self) -> &[String] {
        &self.algebras
    }

    pub fn map_names(&self) -> &[String] {
        &self.maps
    }

    pub fn item(&self, name: &str) -> Option<&Item<F>> {
        self.items.get(name)
    }

    fn get(&self, name: &str) -> Result<&Item<F>, EvalError> {
        match self.items.get(name) {
            Some(i) => Ok(i),
            None if self.failed.iter().any(|n| n == name) => Err(EvalError::Unavailable(name.to_string())),
            None => invalid(format!("`{name}` is not declared")),
        }
    }

    fn split_name<'n>(&self, name: &'n str) -> Result<(&Item<F>, Option<&'n str>), EvalError> {
        match name.split_once('.') {
            Some((base, part)) => Ok((self.get(base)?, Some(part))),
            None => Ok((self.get(name)?, None)),
        }
    }

    fn space(&self, name: &str) -> Result<Space<'_, F>, EvalError> {
        let (item, part) = self.split_name(name)?;
        let no_part = |p: &str| EvalError::NoPart(name.split('.').next().unwrap_or(name).to_string(), p.to_string());
        let not_alg = || EvalError::Kind { name: name.to_string(), expected: "an algebra" };
        Ok(match (item, part) {
            (Item::Ring(a), None) => Space::Plain(a.clone()),
            (Item::Fiber(fp), None) => Space::Fiber(fp),
            (Item::Sum(res, _), None | Some("q")) => Space::Sum(res),
            (Item::Split(sp), None | Some("product")) => Space::Fiber(&sp.product),
            (Item::Sum(res, _), Some("p")) => Space::Fiber(res.fiber()),
            (Item::Fiber(fp), Some("r")) => Space::Plain(fp.e_r().source().clone()),
            (Item::Fiber(fp), Some("s")) => Space::Plain(fp.e_s().source().clone()),
            (Item::Fiber(fp), Some("t")) => Space::Plain(fp.e_r().target().clone()),
            (Item::Sum(_, d), Some("r")) => Space::Plain(d.r().clone()),
            (Item::Sum(_, d), Some("s")) => Space::Plain(d.s().clone()),
            (Item::Sum(_, d), Some("t")) => Space::Plain(d.t().clone()),
            (Item::Split(sp), Some("b")) => Space::Plain(sp.b.clone()),
            (Item::Split(sp), Some("c")) => Space::Plain(sp.c.clone()),
            (Item::Map(m), Some("source")) => Space::Plain(m.source().clone()),
            (Item::Map(m), Some("target")) => Space::Plain(m.target().clone()),
            (_, Some(p)) => return Err(no_part(p)),
            (_, None) => return Err(not_alg()),
        })
    }

    /// The algebra a name denotes.
    pub fn algebra(&self, name: &str) -> Result<Arc<FdAlgebra<F>>, EvalError> {
        Ok(self.space(name)?.algebra().clone())
    }

    /// The algebra map a name denotes.
    pub fn map(&self, name: &str) -> Result<AlgebraMorphism<F>, EvalError> {
        let (item, part) = self.split_name(name)?;
        let fiber = match item {
            Item::Fiber(fp) => Some(fp),
            Item::Sum(res, _) => Some(res.fiber()),
            Item::Split(sp) => Some(&sp.product),
            _ => None,
        };
        Ok(match (item, part) {
            (Item::Map(m), None) => m.clone(),
            (Item::Sum(res, _), Some("kappa")) => res.kappa().clone(),
            (Item::Split(sp), Some("iso")) => sp.iso.clone(),
            (_, Some("rho")) if fiber.is_some() => fiber.unwrap().rho().clone(),
            (_, Some("sigma")) if fiber.is_some() => fiber.unwrap().sigma().clone(),
            (_, Some("e_r")) if fiber.is_some() => fiber.unwrap().e_r().clone(),
            (_, Some("e_s")) if fiber.is_some() => fiber.unwrap().e_s().clone(),
            (_, Some(p)) => return Err(EvalError::NoPart(name.split('.').next().unwrap().to_string(), p.to_string())),
            (_, None) => return Err(EvalError::Kind { name: name.to_string(), expected: "an algebra map" }),
        })
    }

    pub fn module(&self, name: &str) -> Result<FdModule<F>, EvalError> {
        let (item, part) = self.split_name(name)?;
        match (item, part) {
            (Item::Module(m), None) => Ok(m.clone()),
            (Item::Sum(_, d), Some("v")) => Ok(d.v().clone()),
            (Item::Ring(a), None) => Ok(FdModule::regular(a)),
            (_, Some(p)) => Err(EvalError::NoPart(name.split('.').next().unwrap().to_string(), p.to_string())),
            _ => Err(EvalError::Kind { name: name.to_string(), expected: "a module" }),
        }
    }

    fn modmap(&self, name: &str) -> Result<&ModuleMorphism<F>, EvalError> {
        match self.get(name)? {
            Item::ModMap(m) => Ok(m),
            _ => Err(EvalError::Kind { name: name.to_string(), expected: "a module map" }),
        }
    }

    /// The fiber product behind a name, if it has one.
    pub fn fiber(&self, name: &str) -> Option<&FiberProduct<F>> {
        match self.split_name(name).ok()? {
            (Item::Fiber(fp), None) => Some(fp),
            (Item::Split(sp), None | Some("product")) => Some(&sp.product),
            (Item::Sum(res, _), Some("p")) => Some(res.fiber()),
            _ => None,
        }
    }

    pub fn eval_element(&self, algebra: &str, e: &Expr) -> Result<Vector<F>, EvalError> {
        self.space(algebra)?.eval(e)
    }

    /// Evaluates one declaration, recording the binding. Checks yield their
    /// comparison outcome.
    pub fn declare(&mut self, decl: &Decl) -> Result<Option<Outcome>, EvalError> {
        let result = self.declare_inner(decl);
        if result.is_err() {
            if let Some(n) = decl.name() {
                self.failed.push(n.to_string());
            }
        }
        result
    }

    fn declare_inner(&mut self, decl: &Decl) -> Result<Option<Outcome>, EvalError> {
        let (name, item) = match decl {
            Decl::Field { name, .. } => (name, Item::Field),
            Decl::Ring { name, presentation } => (name, Item::Ring(Arc::new(self.presented(presentation)?.1))),
            Decl::Map { name, source, target, sends } => {
                let src = self.algebra(source)?;
                let tgt = self.space(target)?;
                let mut images = Vec::new();
                for (var, _) in src.names() {
                    let Some((_, e)) = sends.iter().find(|(v, _)| v == var) else {
                        return invalid(format!("no image given for `{var}`"));
                    };
                    images.push(tgt.eval(e)?);
                }
                let m = AlgebraMorphism::from_name_images(&src, tgt.algebra(), &images)?;
                (name, Item::Map(m))
            }
            Decl::Module { name, def } => (name, Item::Module(self.module_ctor(def)?)),
            Decl::ModMap { name, source, target, over, images } => {
                let e = self.map(over)?;
                let tgt = self.space(target)?;
                if !e.source().same_structure(tgt.algebra()) {
                    return invalid(format!("`{over}` does not start at `{target}`"));
                }
                let v = self.module(source)?;
                if !v.algebra().same_structure(e.target()) {
                    return invalid(format!("`{source}` is not a module over the target of `{over}`"));
                }
                if images.len() != v.dim() {
                    return invalid(format!("`{source}` has dimension {}, {} images given", v.dim(), images.len()));
                }
                let cols = images.iter().map(|i| tgt.eval(i)).collect::<Result<Vec<_>, _>>()?;
                let matrix = Matrix::from_columns(&self.field, tgt.algebra().dim(), &cols);
                let over_r = v.restrict(&e)?;
                let m = ModuleMorphism::new(over_r, FdModule::regular(tgt.algebra()), matrix)?;
                (name, Item::ModMap(m))
            }
            Decl::Let { name, def } => (name, self.construct(def)?),
            Decl::Check { query, expected } => return Ok(Some(self.check(query, expected)?)),
        };
        match &item {
            Item::Ring(_) | Item::Fiber(_) | Item::Sum(..) | Item::Split(_) => self.algebras.push(name.clone()),
            Item::Map(_) => self.maps.push(name.clone()),
            _ => {}
        }
        self.items.insert(name.clone(), item);
        Ok(None)
    }

    fn presented(&self, p: &Presentation) -> Result<(PolyRing<F>, FdAlgebra<F>), EvalError> {
        let vars: Vec<(&str, u32)> = p.vars.iter().map(|(v, w)| (v.as_str(), *w)).collect();
        let ring = PolyRing::new(&self.field, &vars)?;
        let rels = p.relations.iter().map(|r| ring.from_expr(r)).collect::<Result<Vec<_>, _>>()?;
        let a = FdAlgebra::from_presentation(&ring, &rels)?;
        Ok((ring, a))
    }

    fn elements(&self, algebra: &str, call: &Call) -> Result<Vec<Vector<F>>, EvalError> {
        let space = self.space(algebra)?;
        call.elements.iter().flatten().map(|e| space.eval(e)).collect()
    }

    fn module_ctor(&self, def: &Call) -> Result<FdModule<F>, EvalError> {
        let args = names(def)?;
        let a = self.algebra(args[0])?;
        Ok(match def.name.as_str() {
            "canonical" => {
                let shift = def.positional().nth(1).and_then(Value::as_int).unwrap_or(0);
                FdModule::regular(&a).dual(shift as i32)
            }
            "regular" => FdModule::regular(&a),
            "residue" => FdModule::residue_field(&a),
            "quotient" => FdModule::regular(&a).quotient(&a.ideal(&self.elements(args[0], def)?)),
            other => return invalid(format!("unknown module constructor `{other}`")),
        })
    }

    fn construct(&self, def: &Call) -> Result<Item<F>, EvalError> {
        let args = names(def)?;
        let quotient_by = |alg: &str, gens: Vec<Vector<F>>| -> Result<AlgebraMorphism<F>, EvalError> {
            let a = self.algebra(alg)?;
            let ideal = a.ideal(&gens);
            if ideal.contains(&a.unit()) {
                return invalid(format!("the ideal is all of `{alg}`"));
            }
            Ok(FdAlgebra::quotient(&a, &ideal)?.1)
        };
        Ok(match def.name.as_str() {
            "fiber" => Item::Fiber(fiber_product(&self.map(args[0])?, &self.map(args[1])?)?),
            "fiber_k" => Item::Fiber(fiber_product_over_k(&self.algebra(args[0])?, &self.algebra(args[1])?)),
            "connect" => {
                let (e_r, e_s) = (self.map(args[0])?, self.map(args[1])?);
                let v = self.module(args[2])?;
                let (i_r, i_s) = (self.modmap(args[3])?, self.modmap(args[4])?);
                let d = ConnectedSumDiagram::new(e_r, e_s, v, i_r.matrix().clone(), i_s.matrix().clone())?;
                Item::Sum(Box::new(connected_sum(&d)?), Box::new(d))
            }
            "gorenstein_connect" => {
                let (r, s, t) = (self.algebra(args[0])?, self.algebra(args[1])?, self.algebra(args[2])?);
                let (e_r, e_s) = (self.map(args[3])?, self.map(args[4])?);
                let fits = |m: &AlgebraMorphism<F>, a: &FdAlgebra<F>| {
                    m.source().same_structure(a) && m.target().same_structure(&t)
                };
                if !fits(&e_r, &r) || !fits(&e_s, &s) {
                    return invalid(format!(
                        "`{}` and `{}` must map `{}` and `{}` to `{}`",
                        args[3], args[4], args[0], args[1], args[2]
                    ));
                }
                let grading = match def.named("graded") {
                    Some(Value::Bool(false)) => Grading::Ungraded,
                    _ => Grading::Auto,
                };
                let (res, d) = gorenstein_connected_sum(&e_r, &e_s, grading)?;
                Item::Sum(Box::new(res), Box::new(d))
            }
            "dup" => {
                let a = self.algebra(args[0])?;
                let gens = self.elements(args[0], def)?;
                Item::Fiber(amalgamated_duplication(&a, &a.ideal(&gens))?)
            }
            "split_socle" => {
                let a = self.algebra(args[0])?;
                let w = match &def.elements {
                    Some(_) => Some(self.elements(args[0], def)?),
                    None => None,
                };
                Item::Split(split_socle(&a, w.as_deref())?)
            }
            "trivial_extension" => {
                let cover = trivial_extension_cover(&self.algebra(args[0])?)?;
                Item::Ring(cover.algebra().clone())
            }
            "socle_quotient" => {
                let a = self.algebra(args[0])?;
                Item::Map(quotient_by(args[0], a.socle().basis().to_vec())?)
            }
            "quotient_map" => Item::Map(quotient_by(args[0], self.elements(args[0], def)?)?),
            "compose" => {
                let (g, f) = (self.map(args[0])?, self.map(args[1])?);
                Item::Map(g.compose(&f)?)
            }
            other => return invalid(format!("unknown construction `{other}`")),
        })
    }

    fn check(&self, query: &Value, expected: &Value) -> Result<Outcome, EvalError> {
        let actual = self.value(query)?;
        let want = self.value(expected)?;
        Ok(Outcome {
            pass: actual.value.matches(&want.value),
            expected: want.value,
            actual: actual.value,
            note: actual.note,
        })
    }

    /// Evaluates a literal or a query.
    pub fn value(&self, v: &Value) -> Result<Answer, EvalError> {
        match v {
            Value::Bool(b) => Ok(Val::Bool(*b).into()),
            Value::List(items) => {
                let vals = items.iter().map(|i| self.value(i).map(|a| a.value)).collect::<Result<Vec<_>, _>>()?;
                Ok(Val::List(vals).into())
            }
            Value::Call(c) => self.query(c),
            v => match v.as_int() {
                Some(n) => Ok(Val::Int(n as i128).into()),
                None => invalid(format!("`{v}` is not a value")),
            },
        }
    }

    fn int_arg(&self, c: &Call, i: usize) -> Result<usize, EvalError> {
        match c.positional().nth(i).and_then(Value::as_int) {
            Some(n) if n >= 0 => Ok(n as usize),
            _ => invalid(format!("argument {} of `{}` must be a nonnegative integer", i + 1, c.name)),
        }
    }

    /// Runs a query such as `length(R)` or `betti(Q, k, 8)`.
    pub fn query(&self, c: &Call) -> Result<Answer, EvalError> {
        let pos: Vec<&Value> = c.positional().collect();
        let name0 =
            || pos.first().and_then(|v| v.as_name()).ok_or_else(|| EvalError::Invalid("missing argument".into()));
        let budget = self.limits.budget;
        Ok(match c.name.as_str() {
            "length" => Val::Int(self.algebra(name0()?)?.length() as i128).into(),
            "edim" => Val::Int(self.algebra(name0()?)?.edim() as i128).into(),
            "type" => Val::Int(self.algebra(name0()?)?.type_() as i128).into(),
            "gorenstein" => Val::Bool(self.algebra(name0()?)?.is_gorenstein()).into(),
            "graded" => Val::Bool(self.algebra(name0()?)?.is_graded()).into(),
            "hilbert" => match self.algebra(name0()?)?.hilbert() {
                Some(h) => Val::ints(&h.iter().map(|&x| x as i128).collect::<Vec<_>>()).into(),
                None => return invalid(format!("`{}` is not graded", name0()?)),
            },
            "a_invariant" => match self.algebra(name0()?)?.a_invariant() {
                Some(a) => Val::Int(a as i128).into(),
                None => return invalid(format!("`{}` is not graded", name0()?)),
            },
            "iso_presentation" => self.iso_presentation(name0()?, &pos[1..])?,
            "betti" => {
                let a = self.algebra(name0()?)?;
                let (m, steps) = if pos.len() == 3 {
                    let mname = pos[1].as_name().unwrap_or_default();
                    (self.module_over(&a, mname)?, self.int_arg(c, 2)?)
                } else {
                    (FdModule::residue_field(&a), self.int_arg(c, 1)?)
                };
                let t = minimal_free_resolution(&m, steps, budget)?;
                Val::ints(&t.betti().iter().map(|&b| b as i128).collect::<Vec<_>>()).into()
            }
            "golod" => {
                let m = self.map(name0()?)?;
                let rep = golod_test(&m, self.int_arg(c, 1)?, budget)?;
                Answer { value: Val::Bool(rep.verdict.is_golod()), note: Some(format!("{:?}", rep.verdict)) }
            }
            "deviations" => {
                let d = deviations(&self.algebra(name0()?)?, self.int_arg(c, 1)?, budget)?;
                Val::ints(&d.eps).into()
            }
            "ci" => {
                let d = deviations(&self.algebra(name0()?)?, self.int_arg(c, 1)?, budget)?;
                match d.verdict() {
                    CiVerdict::CompleteIntersectionUpTo { b, c, .. } => Val::ints(&[b, c]).into(),
                    CiVerdict::NotCompleteIntersection { first_nonzero } => Answer {
                        value: Val::Bool(false),
                        note: Some(format!("first nonzero deviation above 2 at index {first_nonzero}")),
                    },
                }
            }
            "gcl_bounds" => {
                let rep = self.colength(name0()?)?;
                Answer {
                    value: Val::ints(&[rep.lower as i128, rep.upper as i128]),
                    note: Some(format!("lower: {}; upper: {}", rep.lower_source, rep.upper_source)),
                }
            }
            "teter" => Val::Bool(teter_test(&self.algebra(name0()?)?)?.is_some()).into(),
            "hv_epi" => Val::Bool(hv_epi_search(&self.algebra(name0()?)?, HV_BUDGET)?.is_found()).into(),
            "formula" => self.formula(c)?,
            other => return invalid(format!("unknown query `{other}`")),
        })
    }

    fn module_over(&self, a: &Arc<FdAlgebra<F>>, name: &str) -> Result<FdModule<F>, EvalError> {
        if name == "k" && !self.items.contains_key("k") {
            return Ok(FdModule::residue_field(a));
        }
        let m = self.module(name)?;
        if !m.algebra().same_structure(a) {
            return invalid(format!("`{name}` is a module over a different algebra"));
        }
        Ok(m)
    }

    /// Colength bounds, using the fiber product structure when the name
    /// denotes `R ×_k S`.
    pub fn colength(&self, name: &str) -> Result<ColengthReport<F>, EvalError> {
        if let Some(fp) = self.fiber(name) {
            if fp.e_r().target().length() == 1 {
                return Ok(gcl_bounds_fiber_product(fp)?);
            }
        }
        Ok(gcl_bounds(&self.algebra(name)?, &[])?)
    }

    fn iso_presentation(&self, target: &str, rest: &[&Value]) -> Result<Answer, EvalError> {
        let Some(Value::Presentation(p)) = rest.first() else {
            return invalid("iso_presentation needs a presentation");
        };
        let space = self.space(target)?;
        let (ring, _) = self.presented(p)?;
        let rels = p.relations.iter().map(|r| ring.from_expr(r)).collect::<Result<Vec<_>, _>>()?;
        let mut images = Vec::new();
        for (var, _) in &p.vars {
            let img = rest[1..].iter().find_map(|v| match v {
                Value::Assign(n, e) if n == var => Some(e),
                _ => None,
            });
            match img {
                Some(e) => images.push(space.eval(e)?),
                None => return invalid(format!("no image given for `{var}`")),
            }
        }
        for v in &rest[1..] {
            if let Value::Assign(n, _) = v {
                if !p.vars.iter().any(|(w, _)| w == n) {
                    return invalid(format!("`{n}` is not a variable of the presentation"));
                }
            }
        }
        let verdict = check_presentation_iso(&ring, &rels, space.algebra(), &images)?;
        let note = (!verdict.is_iso()).then(|| format!("{verdict:?}"));
        Ok(Answer { value: Val::Bool(verdict.is_iso()), note })
    }

    fn formula(&self, c: &Call) -> Result<Answer, EvalError> {
        let id_name = c.positional().next().and_then(Value::as_name).unwrap_or_default();
        let id = FormulaId::from_str(id_name)?;
        let mut inputs = FormulaInputs::new();
        let mut exact = Vec::new();
        let mut truncated: Vec<(String, Vec<i128>)> = Vec::new();
        for a in &c.args {
            let Arg::Named(role, v) = a else { continue };
            if role == "order" {
                continue;
            }
            if role == "a" || role == "r" {
                let n = v.as_int().ok_or_else(|| EvalError::Invalid(format!("`{role}` must be an integer")))?;
                inputs.insert(role.clone(), FormulaInput::Int(n));
                continue;
            }
            let val = self.value(v)?.value;
            let coeffs = val.as_ints().ok_or_else(|| EvalError::Invalid(format!("`{role}` must be a series")))?;
            // literal lists and Hilbert series are polynomials; other queries are truncations
            let is_exact = match v {
                Value::Call(q) => q.name == "hilbert",
                _ => true,
            };
            if is_exact {
                exact.push((role.clone(), coeffs));
            } else {
                truncated.push((role.clone(), coeffs));
            }
        }
        let order = match c.named("order") {
            Some(v) => v.as_int().filter(|n| *n >= 0).ok_or_else(|| EvalError::Invalid("bad order".into()))? as usize,
            None => truncated.iter().map(|(_, c)| c.len().saturating_sub(1)).min().unwrap_or(self.limits.order),
        };
        for (role, coeffs) in exact {
            inputs.insert(role, TruncatedSeries::new(&coeffs, order).into());
        }
        for (role, coeffs) in truncated {
            inputs.insert(role, TruncatedSeries::new(&coeffs, coeffs.len().saturating_sub(1)).into());
        }
        let s = evaluate_formula(id, &inputs, order)?;
        Ok(Val::ints(s.coeffs()).into())
    }
}

/// Result of a `check` declaration.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub expected: Val,
    pub actual: Val,
    pub note: Option<String>,
}

/// Positional name arguments of a call.
fn names(c: &Call) -> Result<Vec<&str>, EvalError> {
    Ok(c.positional().filter_map(Value::as_name).collect())
}
