//! Finite-dimensional commutative local algebras given by structure constants.
//!
//! Basis vector 0 is always the unit and the remaining basis vectors span the
//! maximal ideal. An algebra is *graded* when every basis vector carries a
//! degree, the unit is the only one of degree 0, and products respect degrees.

mod module;
mod morphism;
mod presentation;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{Expr, ExprError, ExprTarget};
use crate::field::Field;
use crate::groebner::GroebnerError;
use crate::linalg::{Matrix, SparseVec, Subspace};
use crate::poly::PolyError;

pub use module::{hom_space, FdModule, ModuleMorphism};
pub use morphism::AlgebraMorphism;
pub use presentation::{check_presentation_iso, IsoCheck, Presentation};

/// Coordinates of an element with respect to a basis.
pub type Vector<F> = Vec<<F as Field>::Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("the presentation defines the zero ring")]
    ZeroRing,
    #[error("degree-0 part has dimension {0}, expected 1")]
    NotConnected(usize),
    #[error("not local: {0}")]
    NotLocal(String),
    #[error("basis vector 0 is not a unit")]
    BadUnit,
    #[error("product e{0}*e{1} differs from e{1}*e{0}")]
    NotCommutative(usize, usize),
    #[error("(e{0}*e{1})*e{2} differs from e{0}*(e{1}*e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("product e{0}*e{1} is not homogeneous of the expected degree")]
    GradingViolated(usize, usize),
    #[error("operation requires a graded algebra")]
    NotGraded,
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map does not send 1 to 1")]
    NotUnital,
    #[error("map is not multiplicative on e{0}*e{1}")]
    NotMultiplicative(usize, usize),
    #[error("map does not preserve degrees on e{0}")]
    NotGradedMap(usize),
    #[error("the given elements do not generate the algebra")]
    NotGenerating,
    #[error("module action fails: {0}")]
    BadAction(String),
    #[error("map is not linear over the acting algebra")]
    NotModuleLinear,
    #[error("maps do not share a source/target")]
    Mismatch,
}

/// A commutative, unital, local, finite-dimensional algebra.
#[derive(Clone)]
pub struct FdAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    degrees: Option<Vec<u32>>,
    table: Vec<SparseVec<F::Elem>>,
    presentation: Option<Presentation<F>>,
    names: Vec<(String, Vector<F>)>,
}

impl<F: Field> fmt::Debug for FdAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdAlgebra(dim {}, over {}", self.dim(), self.field.name())?;
        if let Some(h) = self.hilbert() {
            write!(f, ", hilbert {h:?}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> FdAlgebra<F> {
    /// Builds an algebra from `table[i * n + j] = e_i * e_j` and checks unit,
    /// commutativity, locality and (when given) the grading. Associativity is
    /// checked separately by [`FdAlgebra::audit`].
    pub fn from_table(
        field: &F,
        labels: Vec<String>,
        degrees: Option<Vec<u32>>,
        table: Vec<SparseVec<F::Elem>>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::ZeroRing);
        }
        if table.len() != n * n {
            return Err(AlgebraError::DimensionMismatch { expected: n * n, found: table.len() });
        }
        let alg = FdAlgebra { field: field.clone(), labels, degrees, table, presentation: None, names: Vec::new() };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let f = &self.field;
        for i in 0..n {
            let expect: SparseVec<F::Elem> = vec![(i, f.one())];
            if self.table[i] != expect || self.table[i * n] != expect {
                return Err(AlgebraError::BadUnit);
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                if self.table[i * n + j] != self.table[j * n + i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 1..n {
            for j in 1..n {
                if self.table[i * n + j].first().is_some_and(|(k, _)| *k == 0) {
                    return Err(AlgebraError::NotLocal(format!(
                        "e{i}*e{j} has a unit component, so the span of e1..e{} is not an ideal",
                        n - 1
                    )));
                }
            }
        }
        if let Some(d) = &self.degrees {
            if d.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: d.len() });
            }
            let zeros = d.iter().filter(|&&x| x == 0).count();
            if d[0] != 0 || zeros != 1 {
                return Err(AlgebraError::NotConnected(zeros));
            }
            for i in 0..n {
                for j in 0..n {
                    let want = d[i] + d[j];
                    if self.table[i * n + j].iter().any(|(k, _)| d[*k] != want) {
                        return Err(AlgebraError::GradingViolated(i, j));
                    }
                }
            }
        } else {
            // filtered mode: the maximal ideal must be nilpotent
            let mut power = self.max_ideal();
            for _ in 0..n {
                if power.dim() == 0 {
                    return Ok(());
                }
                power = self.ideal_product(&power, &self.max_ideal());
            }
            if power.dim() != 0 {
                return Err(AlgebraError::NotLocal("maximal ideal is not nilpotent".into()));
            }
        }
        Ok(())
    }

    /// The field itself as a one-dimensional graded algebra.
    pub fn ground(field: &F) -> Self {
        FdAlgebra::from_table(field, vec!["1".into()], Some(vec![0]), vec![vec![(0, field.one())]])
            .expect("the field is a valid algebra")
    }

    /// Same field, basis and structure constants.
    pub fn same_structure(&self, other: &FdAlgebra<F>) -> bool {
        self.field == other.field && self.table == other.table
    }

    /// Exhaustive associativity check over all basis triples.
    #[allow(clippy::needless_range_loop)]
    pub fn audit(&self) -> Result<(), AlgebraError> {
        self.validate()?;
        let n = self.dim();
        let basis_products: Vec<Vec<Vector<F>>> =
            (0..n).map(|i| (0..n).map(|j| self.basis_product(i, j)).collect()).collect();
        for i in 1..n {
            for j in i..n {
                for k in 1..n {
                    let left = self.mul(&basis_products[i][j], &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &basis_products[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    /// Length as a module over itself.
    pub fn length(&self) -> usize {
        self.dim()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }
    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }
    pub fn presentation(&self) -> Option<&Presentation<F>> {
        self.presentation.as_ref()
    }
    pub fn table(&self) -> &[SparseVec<F::Elem>] {
        &self.table
    }

    /// Named elements (for presented algebras, the variables).
    pub fn names(&self) -> &[(String, Vector<F>)] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<(String, Vector<F>)>) -> Self {
        self.names = names;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub(crate) fn set_presentation(&mut self, p: Presentation<F>) {
        self.presentation = Some(p);
    }

    /// Drops the grading, keeping the same structure constants.
    pub fn forget_grading(mut self) -> Self {
        self.degrees = None;
        self
    }

    pub fn zero(&self) -> Vector<F> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit(&self) -> Vector<F> {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector<F> {
        let mut v = self.zero();
        for (k, c) in &self.table[i * self.dim() + j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        let n = self.dim();
        let f = &self.field;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, x) in &self.table[i * n + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, x));
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> Vector<F> {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero_elem(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of multiplication by `e_i`, read directly off the table.
    pub fn basis_mult_matrix(&self, i: usize) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for j in 0..n {
            for (k, c) in &self.table[i * n + j] {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, a: &[F::Elem]) -> Option<u32> {
        let d = self.degrees.as_ref()?;
        let mut found = None;
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            match found {
                None => found = Some(d[i]),
                Some(e) if e != d[i] => return None,
                _ => {}
            }
        }
        found
    }

    pub fn hilbert(&self) -> Option<Vec<u64>> {
        let d = self.degrees.as_ref()?;
        let top = *d.iter().max().unwrap() as usize;
        let mut h = vec![0u64; top + 1];
        for &x in d {
            h[x as usize] += 1;
        }
        Some(h)
    }

    /// Top nonzero degree of a graded artinian algebra.
    pub fn a_invariant(&self) -> Option<u32> {
        self.degrees.as_ref().map(|d| *d.iter().max().unwrap())
    }

    pub fn max_ideal(&self) -> Subspace<F> {
        let vs: Vec<Vector<F>> = (1..self.dim()).map(|i| self.basis_vector(i)).collect();
        Subspace::span(&self.field, self.dim(), &vs)
    }

    /// Span of all products `a * b` with `a` in `i`, `b` in `j`.
    pub fn ideal_product(&self, i: &Subspace<F>, j: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for a in i.basis() {
            for b in j.basis() {
                let p = self.mul(a, b);
                if !self.is_zero_elem(&p) {
                    vs.push(p);
                }
            }
        }
        Subspace::span(&self.field, self.dim(), &vs)
    }

    pub fn max_ideal_power(&self, k: u32) -> Subspace<F> {
        let m = self.max_ideal();
        if k == 0 {
            return Subspace::full(&self.field, self.dim());
        }
        let mut p = m.clone();
        for _ in 1..k {
            p = self.ideal_product(&p, &m);
        }
        p
    }

    /// Basis indices whose vectors minimally generate the maximal ideal.
    pub fn min_generator_indices(&self) -> Vec<usize> {
        let m2 = self.max_ideal_power(2);
        m2.complement_indices().into_iter().filter(|&i| i != 0).collect()
    }

    pub fn min_generators(&self) -> Vec<Vector<F>> {
        self.min_generator_indices().into_iter().map(|i| self.basis_vector(i)).collect()
    }

    /// Embedding dimension `dim m/m^2`.
    pub fn edim(&self) -> usize {
        self.min_generator_indices().len()
    }

    /// Ideal generated by `gens`.
    pub fn ideal(&self, gens: &[Vector<F>]) -> Subspace<F> {
        let mut vs = Vec::new();
        for g in gens {
            for j in 0..self.dim() {
                vs.push(self.mul(g, &self.basis_vector(j)));
            }
        }
        Subspace::span(&self.field, self.dim(), &vs)
    }

    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        s.basis().iter().all(|v| (1..self.dim()).all(|j| s.contains(&self.mul(v, &self.basis_vector(j)))))
    }

    /// `(0 : gens)`.
    pub fn annihilator(&self, gens: &[Vector<F>]) -> Subspace<F> {
        let n = self.dim();
        if gens.is_empty() {
            return Subspace::full(&self.field, n);
        }
        let mut stacked = self.mult_matrix(&gens[0]);
        for g in &gens[1..] {
            stacked = stacked.vstack(&self.mult_matrix(g));
        }
        Subspace::kernel(&stacked)
    }

    pub fn socle(&self) -> Subspace<F> {
        self.annihilator(&self.min_generators())
    }

    /// Socle computed from all of the maximal ideal (slower; used as a cross-check).
    pub fn socle_from_all(&self) -> Subspace<F> {
        let vs: Vec<Vector<F>> = (1..self.dim()).map(|i| self.basis_vector(i)).collect();
        self.annihilator(&vs)
    }

    /// Dimension of the socle.
    pub fn type_(&self) -> usize {
        self.socle().dim()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.type_() == 1
    }

    /// True when a subspace is spanned by homogeneous vectors.
    pub fn is_graded_subspace(&self, s: &Subspace<F>) -> bool {
        self.degrees.is_some() && s.basis().iter().all(|v| self.homogeneous_degree(v).is_some())
    }

    /// Quotient by an ideal, on the basis vectors complementary to its pivots.
    pub fn quotient(
        this: &Arc<Self>,
        ideal: &Subspace<F>,
    ) -> Result<(Arc<FdAlgebra<F>>, AlgebraMorphism<F>), AlgebraError> {
        let n = this.dim();
        let f = &this.field;
        if ideal.basis().iter().any(|v| !f.is_zero(&v[0])) {
            return Err(AlgebraError::UnitIdeal);
        }
        debug_assert!(this.is_ideal(ideal));
        let keep = ideal.complement_indices();
        let m = keep.len();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let mut table = Vec::with_capacity(m * m);
        for &a in &keep {
            for &b in &keep {
                let p = project(&this.basis_product(a, b));
                table.push(p.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect());
            }
        }
        let degrees = if this.is_graded_subspace(ideal) {
            this.degrees.as_ref().map(|d| keep.iter().map(|&k| d[k]).collect())
        } else {
            None
        };
        let labels = keep.iter().map(|&k| this.labels[k].clone()).collect();
        let mut q = FdAlgebra::from_table(f, labels, degrees, table)?;
        q.names = this.names.iter().map(|(s, v)| (s.clone(), project(v))).collect();
        if let Some(p) = &this.presentation {
            let extra: Vec<_> = ideal.basis().iter().map(|v| p.lift(v)).collect();
            if let Ok(pres) = Presentation::new(p.ring(), &[p.gb().generators(), &extra[..]].concat()) {
                q = q.relabel_from_presentation(pres);
            }
        }
        let cols: Vec<Vector<F>> = (0..n).map(|j| project(&this.basis_vector(j))).collect();
        let matrix = Matrix::from_columns(f, m, &cols);
        let q = Arc::new(q);
        let pi = AlgebraMorphism::from_parts_unchecked(this.clone(), q.clone(), matrix);
        Ok((q, pi))
    }

    /// Keeps the quotient's basis but records a presentation when the basis
    /// labels happen to agree with the presentation's standard monomials.
    fn relabel_from_presentation(mut self, pres: Presentation<F>) -> Self {
        let labels: Vec<String> = pres.monomials().iter().map(|m| m.format(pres.ring().names())).collect();
        if labels == self.labels {
            self.presentation = Some(pres);
        }
        self
    }

    /// Trivial extension `A ⋉ M` with `M * M = 0`. Graded when `A` is graded
    /// and the module degrees are all positive.
    pub fn trivial_extension(&self, m: &FdModule<F>) -> Result<FdAlgebra<F>, AlgebraError> {
        let n = self.dim();
        let k = m.dim();
        let f = &self.field;
        let total = n + k;
        let mut table = vec![Vec::new(); total * total];
        for i in 0..n {
            for j in 0..n {
                table[i * total + j] = self.table[i * n + j].clone();
            }
            let act = m.action(i);
            for c in 0..k {
                let col: SparseVec<F::Elem> =
                    (0..k).filter(|&r| !f.is_zero(act.get(r, c))).map(|r| (n + r, act.get(r, c).clone())).collect();
                table[i * total + n + c] = col.clone();
                table[(n + c) * total + i] = col;
            }
        }
        let degrees = match (&self.degrees, m.degrees()) {
            (Some(d), Some(md)) if md.iter().all(|&x| x >= 1) => {
                let mut all = d.clone();
                all.extend(md.iter().map(|&x| x as u32));
                Some(all)
            }
            _ => None,
        };
        let mut labels = self.labels.clone();
        labels.extend((0..k).map(|c| format!("m{c}")));
        let mut names: Vec<(String, Vector<F>)> = self
            .names
            .iter()
            .map(|(s, v)| {
                let mut w = v.clone();
                w.extend(std::iter::repeat_n(f.zero(), k));
                (s.clone(), w)
            })
            .collect();
        names.extend((0..k).map(|c| {
            let mut w = vec![f.zero(); total];
            w[n + c] = f.one();
            (format!("m{c}"), w)
        }));
        Ok(FdAlgebra::from_table(f, labels, degrees, table)?.with_names(names))
    }

    /// Renders an element using the basis labels.
    pub fn format_element(&self, a: &[F::Elem]) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let lab = &self.labels[i];
            parts.push(if i == 0 {
                f.format(x)
            } else if f.is_one(x) {
                lab.clone()
            } else {
                format!("{}*{}", f.format(x), lab)
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Evaluates an expression using the algebra's named elements.
    pub fn eval(&self, e: &Expr) -> Result<Vector<F>, ExprError> {
        e.eval(&ElementScope::new(self))
    }

    /// Summary of the standard invariants.
    pub fn invariants(&self) -> Invariants {
        Invariants {
            length: self.length(),
            hilbert: self.hilbert(),
            edim: self.edim(),
            socle_dim: self.type_(),
            is_gorenstein: self.is_gorenstein(),
            a_invariant: self.a_invariant(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub length: usize,
    pub hilbert: Option<Vec<u64>>,
    pub edim: usize,
    pub socle_dim: usize,
    pub is_gorenstein: bool,
    pub a_invariant: Option<u32>,
}

/// Evaluation context mapping names to algebra elements; tuples are
/// delegated to an optional resolver.
pub struct ElementScope<'a, F: Field> {
    algebra: &'a FdAlgebra<F>,
    names: HashMap<String, Vector<F>>,
    #[allow(clippy::type_complexity)]
    tuple: Option<Box<dyn Fn(&[Expr]) -> Result<Vector<F>, ExprError> + 'a>>,
}

impl<'a, F: Field> ElementScope<'a, F> {
    pub fn new(algebra: &'a FdAlgebra<F>) -> Self {
        let names = algebra.names.iter().cloned().collect();
        ElementScope { algebra, names, tuple: None }
    }

    pub fn bind(&mut self, name: &str, v: Vector<F>) {
        self.names.insert(name.to_string(), v);
    }

    pub fn with_tuple(mut self, f: impl Fn(&[Expr]) -> Result<Vector<F>, ExprError> + 'a) -> Self {
        self.tuple = Some(Box::new(f));
        self
    }
}

impl<F: Field> ExprTarget for ElementScope<'_, F> {
    type F = F;
    type Value = Vector<F>;

    fn field(&self) -> &F {
        &self.algebra.field
    }
    fn constant(&self, c: F::Elem) -> Vector<F> {
        self.algebra.scale(&c, &self.algebra.unit())
    }
    fn variable(&self, name: &str) -> Result<Vector<F>, ExprError> {
        self.names.get(name).cloned().ok_or_else(|| ExprError::UnknownVariable(name.to_string()))
    }
    fn add(&self, a: &Vector<F>, b: &Vector<F>) -> Vector<F> {
        self.algebra.add(a, b)
    }
    fn mul(&self, a: &Vector<F>, b: &Vector<F>) -> Vector<F> {
        self.algebra.mul(a, b)
    }
    fn scale(&self, c: &F::Elem, a: &Vector<F>) -> Vector<F> {
        self.algebra.scale(c, a)
    }
    fn tuple(&self, parts: &[Expr]) -> Result<Vector<F>, ExprError> {
        match &self.tuple {
            Some(t) => t(parts),
            None => Err(ExprError::UnexpectedTuple(parts.len())),
        }
    }
}

#[cfg(test)]
mod tests;
