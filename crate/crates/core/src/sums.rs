//! Fiber products `R ×_T S`, connected sums `R #_T S` and related
//! constructions, all carried out on structure constants.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{hom_space, AlgebraError, AlgebraMorphism, FdAlgebra, FdModule, ModuleMorphism, Vector};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec, Subspace};

/// Number of random combinations tried when searching for an invertible map.
const SEARCH_BUDGET: usize = 64;
const SEARCH_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    R,
    S,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::R => "R",
            Side::S => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the two maps have different targets")]
    TargetMismatch,
    #[error("the map onto T from {0} is not surjective")]
    NotSurjective(Side),
    #[error("the square does not commute: e_R(i_R(v)) != e_S(i_S(v))")]
    DiagramNotCommutative,
    #[error("the map does not vanish on the diagonal")]
    DoesNotDescend,
    #[error("i_{0} is not linear over {0}")]
    IotaNotModuleLinear(Side),
    #[error("i_{0} is not injective")]
    IotaNotInjective(Side),
    #[error("the module V is not a module over T")]
    ModuleNotOverT,
    #[error("the diagonal copy of V is not an ideal of the fiber product")]
    DiagonalNotIdeal,
    #[error("the connected sum is the zero ring (the diagonal contains the unit)")]
    ZeroConnectedSum,
    #[error("{0} is not Gorenstein")]
    NotGorensteinInput(Side),
    #[error("graded identification needs a(R) = a(S), got {a_r} and {a_s}")]
    AInvariantMismatch { a_r: u32, a_s: u32 },
    #[error("no isomorphism from the canonical module of T onto (0 : {0}) was found")]
    NoCanonicalIdentification(Side),
    #[error("no compatible identification of the two copies of V was found")]
    NoCompatibleIdentification,
    #[error("the subspace is not an ideal")]
    NotAnIdeal,
    #[error("an element of W is not in (soc Q + q^2)")]
    WNotInSocleImage,
    #[error("the splitting map is not bijective")]
    SplitNotBijective,
}

fn same_target<F: Field>(a: &Arc<FdAlgebra<F>>, b: &Arc<FdAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

/// `R ×_T S` realised inside `R ⊕ S`.
#[derive(Clone)]
pub struct FiberProduct<F: Field> {
    algebra: Arc<FdAlgebra<F>>,
    rho: AlgebraMorphism<F>,
    sigma: AlgebraMorphism<F>,
    e_r: AlgebraMorphism<F>,
    e_s: AlgebraMorphism<F>,
    embedding: Subspace<F>,
}

impl<F: Field> fmt::Debug for FiberProduct<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiberProduct({:?})", self.algebra)
    }
}

impl<F: Field> FiberProduct<F> {
    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }
    /// Projection onto `R`.
    pub fn rho(&self) -> &AlgebraMorphism<F> {
        &self.rho
    }
    /// Projection onto `S`.
    pub fn sigma(&self) -> &AlgebraMorphism<F> {
        &self.sigma
    }
    pub fn e_r(&self) -> &AlgebraMorphism<F> {
        &self.e_r
    }
    pub fn e_s(&self) -> &AlgebraMorphism<F> {
        &self.e_s
    }
    /// The fiber product as a subspace of `R ⊕ S`.
    pub fn embedding(&self) -> &Subspace<F> {
        &self.embedding
    }

    /// The element `(r, s)`, if `e_R(r) = e_S(s)`.
    pub fn element(&self, r: &[F::Elem], s: &[F::Elem]) -> Option<Vector<F>> {
        let mut v = r.to_vec();
        v.extend_from_slice(s);
        self.embedding.coordinates(&v)
    }

    /// `I = ker e_R` as a subspace of `R`.
    pub fn kernel_r(&self) -> Subspace<F> {
        self.e_r.kernel()
    }
    pub fn kernel_s(&self) -> Subspace<F> {
        self.e_s.kernel()
    }
}

/// `R ×_T S = {(r, s) : e_R(r) = e_S(s)}`.
///
/// The basis is the reduced echelon basis of the kernel of `[e_R | -e_S]`; its
/// first vector is `(1, 1)` and the rest span the maximal ideal. The result is
/// graded when `R`, `S` and both maps are.
pub fn fiber_product<F: Field>(
    e_r: &AlgebraMorphism<F>,
    e_s: &AlgebraMorphism<F>,
) -> Result<FiberProduct<F>, SumsError> {
    if !same_target(e_r.target(), e_s.target()) {
        return Err(SumsError::TargetMismatch);
    }
    if !e_r.is_surjective() {
        return Err(SumsError::NotSurjective(Side::R));
    }
    if !e_s.is_surjective() {
        return Err(SumsError::NotSurjective(Side::S));
    }
    let (r, s) = (e_r.source(), e_s.source());
    let f = r.field();
    let (nr, ns) = (r.dim(), s.dim());
    let m = e_r.matrix().hstack(&e_s.matrix().scale(&f.neg(&f.one())));
    let emb = Subspace::kernel(&m);
    debug_assert_eq!(emb.pivots().first(), Some(&0));
    let np = emb.dim();
    let parts: Vec<(Vector<F>, Vector<F>)> = emb.basis().iter().map(|v| (v[..nr].to_vec(), v[nr..].to_vec())).collect();

    let mut table: Vec<SparseVec<F::Elem>> = vec![Vec::new(); np * np];
    for i in 0..np {
        for j in i..np {
            let mut prod = r.mul(&parts[i].0, &parts[j].0);
            prod.extend(s.mul(&parts[i].1, &parts[j].1));
            let coords: SparseVec<F::Elem> = emb
                .pivots()
                .iter()
                .enumerate()
                .filter(|(_, &p)| !f.is_zero(&prod[p]))
                .map(|(k, &p)| (k, prod[p].clone()))
                .collect();
            table[j * np + i] = coords.clone();
            table[i * np + j] = coords;
        }
    }
    let degrees = match (r.degrees(), s.degrees()) {
        (Some(dr), Some(ds)) if e_r.is_graded() && e_s.is_graded() => {
            let all: Vec<u32> = dr.iter().chain(ds).copied().collect();
            Some(emb.pivots().iter().map(|&p| all[p]).collect())
        }
        _ => None,
    };
    let labels = parts.iter().map(|(a, b)| format!("({}, {})", r.format_element(a), s.format_element(b))).collect();
    let p = Arc::new(FdAlgebra::from_table(f, labels, degrees, table)?);
    let rho = Matrix::from_columns(f, nr, &parts.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>());
    let sigma = Matrix::from_columns(f, ns, &parts.iter().map(|(_, b)| b.clone()).collect::<Vec<_>>());
    Ok(FiberProduct {
        rho: AlgebraMorphism::new(p.clone(), r.clone(), rho)?,
        sigma: AlgebraMorphism::new(p.clone(), s.clone(), sigma)?,
        algebra: p,
        e_r: e_r.clone(),
        e_s: e_s.clone(),
        embedding: emb,
    })
}

/// The data `R -> T <- S` together with a `T`-module `V` and injections
/// `i_R: V -> R`, `i_S: V -> S` making the square commute.
#[derive(Clone)]
pub struct ConnectedSumDiagram<F: Field> {
    e_r: AlgebraMorphism<F>,
    e_s: AlgebraMorphism<F>,
    v: FdModule<F>,
    iota_r: Matrix<F>,
    iota_s: Matrix<F>,
}

impl<F: Field> fmt::Debug for ConnectedSumDiagram<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConnectedSumDiagram(R dim {}, S dim {}, T dim {}, V dim {})",
            self.r().dim(),
            self.s().dim(),
            self.t().dim(),
            self.v.dim()
        )
    }
}

impl<F: Field> ConnectedSumDiagram<F> {
    /// Checks surjectivity of the `e`'s, linearity and injectivity of the
    /// `i`'s (with `R` acting on `V` through `e_R`) and commutativity.
    pub fn new(
        e_r: AlgebraMorphism<F>,
        e_s: AlgebraMorphism<F>,
        v: FdModule<F>,
        iota_r: Matrix<F>,
        iota_s: Matrix<F>,
    ) -> Result<Self, SumsError> {
        if !same_target(e_r.target(), e_s.target()) {
            return Err(SumsError::TargetMismatch);
        }
        if !same_target(v.algebra(), e_r.target()) {
            return Err(SumsError::ModuleNotOverT);
        }
        for (side, e) in [(Side::R, &e_r), (Side::S, &e_s)] {
            if !e.is_surjective() {
                return Err(SumsError::NotSurjective(side));
            }
        }
        for (side, e, iota) in [(Side::R, &e_r, &iota_r), (Side::S, &e_s, &iota_s)] {
            let src = v.restrict(e)?;
            let tgt = FdModule::regular(e.source());
            let map = ModuleMorphism::new(src, tgt, iota.clone()).map_err(|err| match err {
                AlgebraError::NotModuleLinear => SumsError::IotaNotModuleLinear(side),
                other => SumsError::Algebra(other),
            })?;
            if !map.is_injective() {
                return Err(SumsError::IotaNotInjective(side));
            }
        }
        if e_r.matrix().mul(&iota_r) != e_s.matrix().mul(&iota_s) {
            return Err(SumsError::DiagramNotCommutative);
        }
        Ok(ConnectedSumDiagram { e_r, e_s, v, iota_r, iota_s })
    }

    pub fn r(&self) -> &Arc<FdAlgebra<F>> {
        self.e_r.source()
    }
    pub fn s(&self) -> &Arc<FdAlgebra<F>> {
        self.e_s.source()
    }
    pub fn t(&self) -> &Arc<FdAlgebra<F>> {
        self.e_r.target()
    }
    pub fn e_r(&self) -> &AlgebraMorphism<F> {
        &self.e_r
    }
    pub fn e_s(&self) -> &AlgebraMorphism<F> {
        &self.e_s
    }
    pub fn v(&self) -> &FdModule<F> {
        &self.v
    }
    pub fn iota_r(&self) -> &Matrix<F> {
        &self.iota_r
    }
    pub fn iota_s(&self) -> &Matrix<F> {
        &self.iota_s
    }
}

/// A fiber product together with its connected sum.
#[derive(Clone)]
pub struct SumResult<F: Field> {
    fiber: FiberProduct<F>,
    diagonal: Subspace<F>,
    q: Arc<FdAlgebra<F>>,
    kappa: AlgebraMorphism<F>,
}

impl<F: Field> fmt::Debug for SumResult<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SumResult(P = {:?}, Q = {:?})", self.fiber.algebra, self.q)
    }
}

impl<F: Field> SumResult<F> {
    pub fn fiber(&self) -> &FiberProduct<F> {
        &self.fiber
    }
    pub fn p(&self) -> &Arc<FdAlgebra<F>> {
        &self.fiber.algebra
    }
    pub fn q(&self) -> &Arc<FdAlgebra<F>> {
        &self.q
    }
    /// The canonical surjection `P -> Q`.
    pub fn kappa(&self) -> &AlgebraMorphism<F> {
        &self.kappa
    }
    /// `{(i_R(v), i_S(v))}` inside `P`.
    pub fn diagonal(&self) -> &Subspace<F> {
        &self.diagonal
    }
    /// The class of `(r, s)` in `Q`.
    pub fn element(&self, r: &[F::Elem], s: &[F::Elem]) -> Option<Vector<F>> {
        self.fiber.element(r, s).map(|p| self.kappa.apply(&p))
    }
}

impl<F: Field> SumResult<F> {
    /// The map `Q -> X` induced by `g: P -> X`, if `g` kills the diagonal.
    pub fn descend(&self, g: &AlgebraMorphism<F>) -> Result<AlgebraMorphism<F>, SumsError> {
        if g.source().dim() != self.p().dim() {
            return Err(SumsError::Algebra(AlgebraError::Mismatch));
        }
        if self.diagonal.basis().iter().any(|d| !g.target().is_zero_elem(&g.apply(d))) {
            return Err(SumsError::DoesNotDescend);
        }
        let section = self.kappa.linear_section().expect("quotient maps are surjective");
        Ok(AlgebraMorphism::new_ungraded(self.q.clone(), g.target().clone(), g.matrix().mul(&section))?)
    }
}

/// `φ ×_T ψ : R ×_T S -> R' ×_T' S'` for maps compatible with the structure
/// maps of both fiber products.
pub fn fiber_product_map<F: Field>(
    source: &FiberProduct<F>,
    target: &FiberProduct<F>,
    phi: &AlgebraMorphism<F>,
    psi: &AlgebraMorphism<F>,
) -> Result<AlgebraMorphism<F>, SumsError> {
    let n = source.algebra.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let p = source.algebra.basis_vector(j);
        let r = phi.apply(&source.rho.apply(&p));
        let s = psi.apply(&source.sigma.apply(&p));
        cols.push(target.element(&r, &s).ok_or(SumsError::DiagramNotCommutative)?);
    }
    let m = Matrix::from_columns(source.algebra.field(), target.algebra.dim(), &cols);
    Ok(AlgebraMorphism::new_ungraded(source.algebra.clone(), target.algebra.clone(), m)?)
}

/// `R #_T S = (R ×_T S) / {(i_R(v), i_S(v))}`.
pub fn connected_sum<F: Field>(d: &ConnectedSumDiagram<F>) -> Result<SumResult<F>, SumsError> {
    let fiber = fiber_product(&d.e_r, &d.e_s)?;
    let p = fiber.algebra.clone();
    let f = p.field();
    let mut gens = Vec::with_capacity(d.v.dim());
    for c in 0..d.v.dim() {
        let g = fiber.element(&d.iota_r.column(c), &d.iota_s.column(c)).ok_or(SumsError::DiagramNotCommutative)?;
        gens.push(g);
    }
    let diagonal = Subspace::span(f, p.dim(), &gens);
    if !p.is_ideal(&diagonal) {
        return Err(SumsError::DiagonalNotIdeal);
    }
    if diagonal.pivots().first() == Some(&0) {
        return Err(SumsError::ZeroConnectedSum);
    }
    let (q, kappa) = FdAlgebra::quotient(&p, &diagonal)?;
    debug_assert_eq!(q.length() + d.t().length() + d.v.dim(), d.r().length() + d.s().length());
    Ok(SumResult { fiber, diagonal, q, kappa })
}

/// How [`gorenstein_connected_sum`] treats gradings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grading {
    /// Degree-preserving identifications when every input is graded, which
    /// requires `a(R) = a(S)`; otherwise as `Ungraded`.
    #[default]
    Auto,
    /// Any identifications; the result may only be filtered.
    Ungraded,
}

fn combine<F: Field>(f: &F, base: Option<&Matrix<F>>, dirs: &[Matrix<F>], coeffs: &[F::Elem]) -> Matrix<F> {
    let mut out = base.cloned().unwrap_or_else(|| Matrix::zeros(f, dirs[0].rows(), dirs[0].cols()));
    for (d, c) in dirs.iter().zip(coeffs) {
        if !f.is_zero(c) {
            out = out.add(&d.scale(c));
        }
    }
    out
}

/// First invertible matrix among `base`, `base + dir_k` and seeded random
/// combinations `base + sum c_k dir_k`.
fn find_invertible<F: Field>(f: &F, base: Option<&Matrix<F>>, dirs: &[Matrix<F>]) -> Option<Matrix<F>> {
    if let Some(b) = base {
        if b.is_invertible() {
            return Some(b.clone());
        }
    }
    if dirs.is_empty() {
        return None;
    }
    for k in 0..dirs.len() {
        let mut c = vec![f.zero(); dirs.len()];
        c[k] = f.one();
        let m = combine(f, base, dirs, &c);
        if m.is_invertible() {
            return Some(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..SEARCH_BUDGET {
        let c: Vec<F::Elem> = dirs.iter().map(|_| f.random(&mut rng)).collect();
        let m = combine(f, base, dirs, &c);
        if m.is_invertible() {
            return Some(m);
        }
    }
    None
}

/// `Hom_A(M, N)`, restricted to degree-preserving maps when both are graded.
pub fn graded_hom_space<F: Field>(m: &FdModule<F>, n: &FdModule<F>) -> Vec<Matrix<F>> {
    let all = hom_space(m, n);
    let (Some(dm), Some(dn)) = (m.degrees(), n.degrees()) else {
        return all;
    };
    if all.is_empty() {
        return all;
    }
    let f = m.algebra().field();
    let mut rows = Vec::new();
    for (r, &dr) in dn.iter().enumerate() {
        for (c, &dc) in dm.iter().enumerate() {
            if dr != dc {
                let row: Vector<F> = all.iter().map(|x| x.get(r, c).clone()).collect();
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return all;
    }
    let kernel = Matrix::from_rows(f, all.len(), &rows).nullspace();
    kernel.columns().iter().map(|c| combine(f, None, &all, c)).collect()
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vector<F> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

/// The connected sum of Gorenstein `R` and `S` along `V = Hom_k(T, k)`, with
/// `i_R`, `i_S` isomorphisms onto `(0 : I)` and `(0 : J)`. The result is
/// Gorenstein.
pub fn gorenstein_connected_sum<F: Field>(
    e_r: &AlgebraMorphism<F>,
    e_s: &AlgebraMorphism<F>,
    grading: Grading,
) -> Result<(SumResult<F>, ConnectedSumDiagram<F>), SumsError> {
    if !same_target(e_r.target(), e_s.target()) {
        return Err(SumsError::TargetMismatch);
    }
    let (r, s, t) = (e_r.source(), e_s.source(), e_r.target());
    let f = r.field();
    for (side, a) in [(Side::R, r), (Side::S, s)] {
        if !a.is_gorenstein() {
            return Err(SumsError::NotGorensteinInput(side));
        }
    }
    let graded = grading == Grading::Auto && t.is_graded() && e_r.is_graded() && e_s.is_graded();
    let v = if graded {
        let (a_r, a_s) = (r.a_invariant().unwrap(), s.a_invariant().unwrap());
        if a_r != a_s {
            return Err(SumsError::AInvariantMismatch { a_r, a_s });
        }
        FdModule::regular(t).dual(a_r as i32)
    } else {
        FdModule::regular(t).dual(0).without_degrees()
    };

    let mut iotas = Vec::with_capacity(2);
    for (side, e) in [(Side::R, e_r), (Side::S, e_s)] {
        let a = e.source();
        let ann = a.annihilator(e.kernel().basis());
        let mut target = FdModule::regular(a).submodule(&ann);
        if !graded {
            target = target.without_degrees();
        }
        let homs = graded_hom_space(&v.restrict(e)?, &target);
        if ann.dim() != v.dim() {
            return Err(SumsError::NoCanonicalIdentification(side));
        }
        let phi = find_invertible(f, None, &homs).ok_or(SumsError::NoCanonicalIdentification(side))?;
        iotas.push(ann.basis_matrix().mul(&phi));
    }
    let iota_s0 = iotas.pop().unwrap();
    let iota_r = iotas.pop().unwrap();

    // correct i_S by an automorphism alpha of V with e_S i_S alpha = e_R i_R
    let ends = graded_hom_space(&v, &v);
    let lhs = e_s.matrix().mul(&iota_s0);
    let cols: Vec<Vector<F>> = ends.iter().map(|a| flatten(&lhs.mul(a))).collect();
    let rhs = flatten(&e_r.matrix().mul(&iota_r));
    let alpha = if cols.is_empty() {
        None
    } else {
        let sys = Matrix::from_columns(f, rhs.len(), &cols);
        match sys.solve(&rhs).map_err(|_| SumsError::NoCompatibleIdentification)? {
            None => None,
            Some(c0) => {
                let base = combine(f, None, &ends, &c0);
                let dirs: Vec<Matrix<F>> =
                    sys.nullspace().columns().iter().map(|c| combine(f, None, &ends, c)).collect();
                find_invertible(f, Some(&base), &dirs)
            }
        }
    };
    let alpha = alpha.ok_or(SumsError::NoCompatibleIdentification)?;
    let iota_s = iota_s0.mul(&alpha);
    let d = ConnectedSumDiagram::new(e_r.clone(), e_s.clone(), v, iota_r, iota_s)?;
    let res = connected_sum(&d)?;
    debug_assert!(res.q.is_gorenstein());
    Ok((res, d))
}

/// `R ⋈ I = R ×_{R/I} R`.
pub fn amalgamated_duplication<F: Field>(
    r: &Arc<FdAlgebra<F>>,
    ideal: &Subspace<F>,
) -> Result<FiberProduct<F>, SumsError> {
    if !r.is_ideal(ideal) {
        return Err(SumsError::NotAnIdeal);
    }
    let (_, pi) = FdAlgebra::quotient(r, ideal)?;
    fiber_product(&pi, &pi)
}

/// `Q ≅ B ×_k C` with `c^2 = 0` and `c ≅ W`.
#[derive(Debug, Clone)]
pub struct SocleSplitting<F: Field> {
    pub b: Arc<FdAlgebra<F>>,
    pub c: Arc<FdAlgebra<F>>,
    pub product: FiberProduct<F>,
    /// `Q -> B ×_k C`.
    pub iso: AlgebraMorphism<F>,
    /// Socle elements lifting the basis of `W`.
    pub x: Vec<Vector<F>>,
    /// The complementary minimal generators.
    pub y: Vec<Vector<F>>,
}

/// Splits off a square-zero factor spanned by socle elements. `w` lists
/// representatives of a basis of `W ⊆ (soc Q + q^2)/q^2`; `None` means all of it.
pub fn split_socle<F: Field>(q: &Arc<FdAlgebra<F>>, w: Option<&[Vector<F>]>) -> Result<SocleSplitting<F>, SumsError> {
    let f = q.field();
    let n = q.dim();
    let soc = q.socle().intersection(&q.max_ideal());
    let m2 = q.max_ideal_power(2);

    let mut span = m2.clone();
    let mut x = Vec::new();
    let add_if_new = |v: Vector<F>, span: &mut Subspace<F>, out: &mut Vec<Vector<F>>| {
        if !span.contains(&v) {
            *span = span.sum(&Subspace::span(f, n, std::slice::from_ref(&v)));
            out.push(v);
        }
    };
    match w {
        None => {
            for b in soc.basis() {
                add_if_new(b.clone(), &mut span, &mut x);
            }
        }
        Some(ws) => {
            let mut cols: Vec<Vector<F>> = soc.basis().to_vec();
            cols.extend(m2.basis().iter().cloned());
            for wv in ws {
                if cols.is_empty() {
                    return Err(SumsError::WNotInSocleImage);
                }
                let sys = Matrix::from_columns(f, n, &cols);
                let c = sys.solve(wv).ok().flatten().ok_or(SumsError::WNotInSocleImage)?;
                let mut lift = vec![f.zero(); n];
                for (ci, b) in c.iter().zip(soc.basis()) {
                    for (l, bi) in lift.iter_mut().zip(b) {
                        *l = f.add(l, &f.mul(ci, bi));
                    }
                }
                add_if_new(lift, &mut span, &mut x);
            }
        }
    }
    let mut y = Vec::new();
    for i in q.min_generator_indices() {
        add_if_new(q.basis_vector(i), &mut span, &mut y);
    }

    let (b, pb) = FdAlgebra::quotient(q, &q.ideal(&x))?;
    let (c, pc) = FdAlgebra::quotient(q, &q.ideal(&y))?;
    let k = Arc::new(FdAlgebra::ground(f));
    let product = fiber_product(&AlgebraMorphism::augmentation(&b, &k)?, &AlgebraMorphism::augmentation(&c, &k)?)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e = q.basis_vector(j);
        cols.push(product.element(&pb.apply(&e), &pc.apply(&e)).ok_or(SumsError::SplitNotBijective)?);
    }
    let iso = AlgebraMorphism::new_ungraded(
        q.clone(),
        product.algebra.clone(),
        Matrix::from_columns(f, product.algebra.dim(), &cols),
    )?;
    if !iso.is_isomorphism() {
        return Err(SumsError::SplitNotBijective);
    }
    Ok(SocleSplitting { b, c, product, iso, x, y })
}

#[cfg(test)]
mod tests;
