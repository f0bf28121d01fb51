//! Bounds and witnesses for the Gorenstein colength
//! `gcl Q = min { length(A) - length(Q) : A ->> Q, A artinian Gorenstein }`.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{hom_space, AlgebraError, AlgebraMorphism, FdAlgebra, FdModule, ModuleMorphism, Vector};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::sums::{gorenstein_connected_sum, FiberProduct, Grading, SumsError};

/// Dual elements tried when looking for large Gorenstein quotients.
pub const QUOTIENT_BUDGET: usize = 64;
/// Random forms tried by [`teter_test`] after the basis forms.
pub const TETER_BUDGET: usize = 128;
const SEED: u64 = 0x5eed_0002;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColengthError {
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("cover {index} is not a valid witness: {reason}")]
    WitnessInvalid { index: usize, reason: String },
    #[error("a positive colength gap is needed to extend this cover")]
    ZeroGap,
    #[error("fiber product is not taken over the residue field")]
    NotOverField,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sums(#[from] SumsError),
}

/// A surjection `A ->> Q` from an artinian Gorenstein algebra.
#[derive(Debug, Clone)]
pub struct Cover<F: Field> {
    map: AlgebraMorphism<F>,
}

impl<F: Field> Cover<F> {
    /// Checks that the source is Gorenstein and the map surjective.
    pub fn new(map: AlgebraMorphism<F>) -> Result<Self, String> {
        if !map.source().is_gorenstein() {
            return Err(format!("source has type {}", map.source().type_()));
        }
        if !map.is_surjective() {
            return Err(format!("map has rank {} < {}", map.rank(), map.target().dim()));
        }
        Ok(Cover { map })
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        self.map.source()
    }

    pub fn map(&self) -> &AlgebraMorphism<F> {
        &self.map
    }

    /// `length(A) - length(Q)`.
    pub fn gap(&self) -> usize {
        self.map.source().length() - self.map.target().length()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerSource {
    Gorenstein,
    /// Any non-Gorenstein algebra has colength at least one.
    NotGorenstein,
    /// `edim Q - (length Q - length C)` for a Gorenstein quotient `C`.
    GorensteinQuotient {
        quotient_length: usize,
    },
    /// `edim R + edim S - 1` for Gorenstein factors.
    FiberProduct {
        edim_r: usize,
        edim_s: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperSource {
    Gorenstein,
    TrivialExtension,
    /// `Q ≅ A / soc A` from a symmetric form.
    Teter,
    Supplied(usize),
    FiberProduct,
}

impl fmt::Display for LowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerSource::Gorenstein => write!(f, "gorenstein"),
            LowerSource::NotGorenstein => write!(f, "type at least 2"),
            LowerSource::GorensteinQuotient { quotient_length } => {
                write!(f, "gorenstein quotient of length {quotient_length}")
            }
            LowerSource::FiberProduct { edim_r, edim_s } => {
                write!(f, "fiber product of gorenstein factors (edim {edim_r} + {edim_s} - 1)")
            }
        }
    }
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperSource::Gorenstein => write!(f, "gorenstein"),
            UpperSource::TrivialExtension => write!(f, "trivial extension by the injective hull"),
            UpperSource::Teter => write!(f, "symmetric form"),
            UpperSource::Supplied(i) => write!(f, "supplied cover {i}"),
            UpperSource::FiberProduct => write!(f, "connected sum of factor covers"),
        }
    }
}

/// Bounds coming from a fiber product decomposition `Q = R ×_k S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberProductBounds {
    pub lower: usize,
    pub upper: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ColengthReport<F: Field> {
    pub length: usize,
    pub edim: usize,
    pub lower: usize,
    pub lower_source: LowerSource,
    pub upper: usize,
    pub upper_source: UpperSource,
    pub witness: Cover<F>,
    pub teter: Option<TeterWitness<F>>,
    pub fiber_product: Option<FiberProductBounds>,
    pub notes: Vec<String>,
}

impl<F: Field> ColengthReport<F> {
    fn raise_lower(&mut self, value: usize, source: LowerSource) {
        if value > self.lower {
            self.lower = value;
            self.lower_source = source;
        }
    }

    fn offer(&mut self, cover: Cover<F>, source: UpperSource) {
        if cover.gap() < self.upper {
            self.upper = cover.gap();
            self.upper_source = source;
            self.witness = cover;
        }
    }
}

fn identity_cover<F: Field>(q: &Arc<FdAlgebra<F>>) -> Cover<F> {
    Cover { map: AlgebraMorphism::identity(q) }
}

/// `Q ⋉ E ->> Q`, of colength gap `length(Q)`.
pub fn trivial_extension_cover<F: Field>(q: &Arc<FdAlgebra<F>>) -> Result<Cover<F>, ColengthError> {
    let e = match q.a_invariant() {
        Some(a) => FdModule::regular(q).dual(a as i32 + 1),
        None => FdModule::regular(q).dual(0).without_degrees(),
    };
    let a = Arc::new(q.trivial_extension(&e)?);
    let f = q.field();
    let mut m = Matrix::zeros(f, q.dim(), a.dim());
    for i in 0..q.dim() {
        m.set(i, i, f.one());
    }
    let map = AlgebraMorphism::new_ungraded(a, q.clone(), m)?;
    Cover::new(map).map_err(|reason| ColengthError::WitnessInvalid { index: 0, reason })
}

/// The cover `k[t]/(t^(n+extra)) ->> S` of an algebra with `edim S <= 1`
/// and `length S = n`.
pub fn principal_cover<F: Field>(s: &Arc<FdAlgebra<F>>, extra: usize) -> Result<Cover<F>, ColengthError> {
    assert!(s.edim() <= 1, "principal covers need edim at most 1");
    let n = s.length();
    let rel = format!("t^{}", n + extra);
    let b = Arc::new(FdAlgebra::parse(s.field(), &[("t", 1)], &[rel.as_str()])?);
    let t = b.names()[0].1.clone();
    let g = s.min_generators().into_iter().next().unwrap_or_else(|| s.zero());
    let map = AlgebraMorphism::from_generator_images(&b, s, &[t], &[g])?;
    Cover::new(map).map_err(|reason| ColengthError::WitnessInvalid { index: 0, reason })
}

fn random_combination<F: Field>(f: &F, rng: &mut ChaCha8Rng, dirs: &[Matrix<F>]) -> Matrix<F> {
    let mut out = Matrix::zeros(f, dirs[0].rows(), dirs[0].cols());
    for d in dirs {
        out = out.add(&d.scale(&f.random(rng)));
    }
    out
}

/// Largest `length(Q / ann(φ))` over the dual basis and seeded random `φ`.
/// Each such quotient is Gorenstein.
pub fn largest_gorenstein_quotient<F: Field>(q: &FdAlgebra<F>, budget: usize) -> usize {
    let f = q.field();
    let n = q.dim();
    let gram = |phi: &[F::Elem]| -> usize {
        let rows: Vec<Vector<F>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        q.basis_product(i, j).iter().zip(phi).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(f, n, &rows).rank()
    };
    let mut best = 1;
    for k in 0..n {
        let mut phi = vec![f.zero(); n];
        phi[k] = f.one();
        best = best.max(gram(&phi));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..budget {
        if best == n {
            break;
        }
        let phi: Vector<F> = (0..n).map(|_| f.random(&mut rng)).collect();
        best = best.max(gram(&phi));
    }
    best
}

/// Interval for `gcl Q` with a verified upper witness. Supplied covers must
/// have target `q` (compared by structure constants).
pub fn gcl_bounds<F: Field>(
    q: &Arc<FdAlgebra<F>>,
    covers: &[AlgebraMorphism<F>],
) -> Result<ColengthReport<F>, ColengthError> {
    let length = q.length();
    let edim = q.edim();
    let mut notes = Vec::new();
    let teter = if q.field().characteristic() == 2 {
        notes.push("symmetric form search skipped in characteristic 2".to_string());
        None
    } else {
        teter_test(q)?
    };

    let mut report = if q.is_gorenstein() {
        ColengthReport {
            length,
            edim,
            lower: 0,
            lower_source: LowerSource::Gorenstein,
            upper: 0,
            upper_source: UpperSource::Gorenstein,
            witness: identity_cover(q),
            teter,
            fiber_product: None,
            notes,
        }
    } else {
        let witness = trivial_extension_cover(q)?;
        let mut r = ColengthReport {
            length,
            edim,
            lower: 1,
            lower_source: LowerSource::NotGorenstein,
            upper: witness.gap(),
            upper_source: UpperSource::TrivialExtension,
            witness,
            teter,
            fiber_product: None,
            notes,
        };
        let c = largest_gorenstein_quotient(q, QUOTIENT_BUDGET);
        if let Some(v) = (edim + c).checked_sub(length) {
            r.raise_lower(v, LowerSource::GorensteinQuotient { quotient_length: c });
        }
        if let Some(w) = r.teter.clone() {
            r.offer(w.cover, UpperSource::Teter);
        }
        r
    };

    for (index, map) in covers.iter().enumerate() {
        if !map.target().same_structure(q) {
            return Err(ColengthError::WitnessInvalid { index, reason: "target differs from Q".into() });
        }
        let cover = Cover::new(map.clone()).map_err(|reason| ColengthError::WitnessInvalid { index, reason })?;
        report.offer(cover, UpperSource::Supplied(index));
    }
    debug_assert!(report.lower <= report.upper && report.upper <= length);
    Ok(report)
}

/// Cover of `R ×_k S` by `A #_k B` built from covers `A ->> R`, `B ->> S`
/// whose kernels contain the socles.
pub fn fiber_product_cover<F: Field>(
    fp: &FiberProduct<F>,
    cover_r: &Cover<F>,
    cover_s: &Cover<F>,
) -> Result<Cover<F>, ColengthError> {
    let f = fp.algebra().field();
    let k = Arc::new(FdAlgebra::ground(f));
    let aug_a = AlgebraMorphism::augmentation(cover_r.algebra(), &k)?;
    let aug_b = AlgebraMorphism::augmentation(cover_s.algebra(), &k)?;
    let (sum, _) = gorenstein_connected_sum(&aug_a, &aug_b, Grading::Ungraded)?;
    let section = sum.kappa().linear_section().expect("quotient maps are surjective");
    let mut cols = Vec::with_capacity(sum.q().dim());
    for j in 0..sum.q().dim() {
        let p = section.column(j);
        let r = cover_r.map().apply(&sum.fiber().rho().apply(&p));
        let s = cover_s.map().apply(&sum.fiber().sigma().apply(&p));
        let v = fp.element(&r, &s).ok_or(ColengthError::WitnessInvalid {
            index: 0,
            reason: "factor covers disagree on the residue field".into(),
        })?;
        cols.push(v);
    }
    let m = Matrix::from_columns(f, fp.algebra().dim(), &cols);
    let map = AlgebraMorphism::new_ungraded(sum.q().clone(), fp.algebra().clone(), m)?;
    Cover::new(map).map_err(|reason| ColengthError::WitnessInvalid { index: 0, reason })
}

/// Bounds for `Q = R ×_k S`, combining [`gcl_bounds`] on `Q` with the
/// fiber product bounds and their witnesses.
pub fn gcl_bounds_fiber_product<F: Field>(fp: &FiberProduct<F>) -> Result<ColengthReport<F>, ColengthError> {
    if fp.e_r().target().dim() != 1 {
        return Err(ColengthError::NotOverField);
    }
    let q = fp.algebra();
    let mut report = gcl_bounds(q, &[])?;
    let (r, s) = (fp.e_r().source(), fp.e_s().source());
    if r.dim() == 1 || s.dim() == 1 {
        report.notes.push("a factor is the residue field; no fiber product bounds".into());
        return Ok(report);
    }
    let best = |a: &Arc<FdAlgebra<F>>| -> Result<Cover<F>, ColengthError> {
        if a.edim() <= 1 {
            principal_cover(a, 1)
        } else {
            Ok(gcl_bounds(a, &[])?.witness)
        }
    };
    let bounds = match (r.is_gorenstein(), s.is_gorenstein()) {
        (true, true) => {
            let lower = r.edim() + s.edim() - 1;
            report.raise_lower(lower, LowerSource::FiberProduct { edim_r: r.edim(), edim_s: s.edim() });
            let mut upper = None;
            if r.edim() == 1 && s.edim() == 1 {
                let c = fiber_product_cover(fp, &principal_cover(r, 1)?, &principal_cover(s, 1)?)?;
                upper = Some(c.gap());
                report.offer(c, UpperSource::FiberProduct);
            }
            FiberProductBounds { lower, upper }
        }
        (gr, _) => {
            // the non-Gorenstein side plays the role of R
            let (r, s, swap) = if !gr { (r, s, false) } else { (s, r, true) };
            let mut upper = None;
            if s.edim() == 1 || !s.is_gorenstein() {
                let (cr, cs) = (best(r)?, best(s)?);
                let c = if swap { fiber_product_cover(fp, &cs, &cr)? } else { fiber_product_cover(fp, &cr, &cs)? };
                upper = Some(c.gap());
                report.offer(c, UpperSource::FiberProduct);
            }
            FiberProductBounds { lower: 1, upper }
        }
    };
    report.fiber_product = Some(bounds);
    debug_assert!(report.lower <= report.upper);
    Ok(report)
}

/// `R #_k k[x]/(x^(n+2)) ->> Q`: a cover of gap `gap + n`.
pub fn extend_cover<F: Field>(cover: &Cover<F>, n: usize) -> Result<Cover<F>, ColengthError> {
    let q = cover.map().target();
    if cover.gap() == 0 {
        if q.edim() <= 1 {
            return principal_cover(q, n);
        }
        return Err(ColengthError::ZeroGap);
    }
    if n == 0 {
        return Ok(cover.clone());
    }
    let f = q.field();
    let k = Arc::new(FdAlgebra::ground(f));
    let rel = format!("x^{}", n + 2);
    let s = Arc::new(FdAlgebra::parse(f, &[("x", 1)], &[rel.as_str()])?);
    let aug_r = AlgebraMorphism::augmentation(cover.algebra(), &k)?;
    let aug_s = AlgebraMorphism::augmentation(&s, &k)?;
    let (sum, _) = gorenstein_connected_sum(&aug_r, &aug_s, Grading::Ungraded)?;
    let section = sum.kappa().linear_section().expect("quotient maps are surjective");
    let onto_r = sum.fiber().rho().matrix().mul(&section);
    let m = cover.map().matrix().mul(&onto_r);
    let map = AlgebraMorphism::new_ungraded(sum.q().clone(), q.clone(), m)?;
    Cover::new(map).map_err(|reason| ColengthError::WitnessInvalid { index: 0, reason })
}

/// A symmetric form `β` on the maximal ideal with `β(ax, y) = β(x, ay)`,
/// nondegenerate against the socle, and the Gorenstein algebra
/// `A = Q ⊕ k·s` it defines, with `A / soc A = Q`.
#[derive(Debug, Clone)]
pub struct TeterWitness<F: Field> {
    /// Gram matrix on the basis `e_1, ..., e_{n-1}` of the maximal ideal.
    pub form: Matrix<F>,
    pub cover: Cover<F>,
}

/// Searches for `Q ≅ A / soc A` through the linear system for symmetric,
/// balanced forms on the maximal ideal.
pub fn teter_test<F: Field>(q: &Arc<FdAlgebra<F>>) -> Result<Option<TeterWitness<F>>, ColengthError> {
    let f = q.field();
    if f.characteristic() == 2 {
        return Err(ColengthError::CharTwo);
    }
    let n = q.dim();
    let m = n - 1;
    // unknowns: β(i, j) for 1 <= i <= j < n
    let var = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        a * m - a * (a + 1) / 2 + b
    };
    let unknowns = m * (m + 1) / 2;
    let forms: Vec<Matrix<F>> = if m == 0 {
        vec![Matrix::zeros(f, 0, 0)]
    } else {
        let mut rows: Vec<Vector<F>> = Vec::new();
        for u in q.min_generator_indices() {
            for x in 1..n {
                let ux = q.basis_product(u, x);
                for y in 1..n {
                    let uy = q.basis_product(u, y);
                    let mut row = vec![f.zero(); unknowns];
                    for kk in 1..n {
                        if !f.is_zero(&ux[kk]) {
                            let v = var(kk, y);
                            row[v] = f.add(&row[v], &ux[kk]);
                        }
                        if !f.is_zero(&uy[kk]) {
                            let v = var(x, kk);
                            row[v] = f.sub(&row[v], &uy[kk]);
                        }
                    }
                    if row.iter().any(|c| !f.is_zero(c)) {
                        rows.push(row);
                    }
                }
            }
        }
        let sol: Vec<Vector<F>> = if rows.is_empty() {
            Matrix::identity(f, unknowns).columns()
        } else {
            Matrix::from_rows(f, unknowns, &rows).nullspace().columns()
        };
        sol.iter()
            .map(|c| {
                let mut g = Matrix::zeros(f, m, m);
                for i in 1..n {
                    for j in 1..n {
                        g.set(i - 1, j - 1, c[var(i, j)].clone());
                    }
                }
                g
            })
            .collect()
    };
    if forms.is_empty() {
        return Ok(None);
    }

    // socle nondegeneracy: rank of (socle basis) * G equals the socle dimension
    let soc: Vec<Vector<F>> = q.socle().basis().iter().map(|v| v[1..].to_vec()).collect();
    let admissible = |g: &Matrix<F>| -> bool {
        if m == 0 {
            return true;
        }
        let s = Matrix::from_rows(f, m, &soc);
        s.mul(g).rank() == soc.len()
    };
    let mut found = forms.iter().find(|g| admissible(g)).cloned();
    if found.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..TETER_BUDGET {
            let g = random_combination(f, &mut rng, &forms);
            if admissible(&g) {
                found = Some(g);
                break;
            }
        }
    }
    let Some(form) = found else { return Ok(None) };
    let cover = socle_extension(q, &form)?;
    Ok(Some(TeterWitness { form, cover }))
}

/// `A = Q ⊕ k·s` with `e_i e_j = (e_i e_j)_Q + β(e_i, e_j) s` on the maximal ideal.
fn socle_extension<F: Field>(q: &Arc<FdAlgebra<F>>, form: &Matrix<F>) -> Result<Cover<F>, ColengthError> {
    let f = q.field();
    let n = q.dim();
    let total = n + 1;
    let mut table: Vec<SparseVec<F::Elem>> = vec![Vec::new(); total * total];
    let mut top = None;
    let mut homogeneous = q.degrees().is_some();
    for i in 0..n {
        for j in 0..n {
            let mut v = q.table()[i * n + j].clone();
            if i > 0 && j > 0 {
                let b = form.get(i - 1, j - 1);
                if !f.is_zero(b) {
                    v.push((n, b.clone()));
                    if let Some(d) = q.degrees() {
                        let s = d[i] + d[j];
                        homogeneous &= *top.get_or_insert(s) == s;
                    }
                }
            }
            table[i * total + j] = v;
        }
    }
    table[n] = vec![(n, f.one())];
    table[n * total] = vec![(n, f.one())];
    let degrees = match (homogeneous, q.degrees()) {
        (true, Some(d)) => {
            let mut d = d.to_vec();
            d.push(top.unwrap_or_else(|| d.iter().max().unwrap() + 1));
            Some(d)
        }
        _ => None,
    };
    let mut labels = q.labels().to_vec();
    labels.push("s".into());
    let a = Arc::new(FdAlgebra::from_table(f, labels, degrees, table)?);
    a.audit()?;
    let mut m = Matrix::zeros(f, n, total);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    let map = AlgebraMorphism::new_ungraded(a, q.clone(), m)?;
    Cover::new(map).map_err(|reason| ColengthError::WitnessInvalid { index: 0, reason })
}

#[derive(Debug, Clone)]
pub enum HvResult<F: Field> {
    /// A surjection `E ->> 𝔮`, certified by rank.
    Found(ModuleMorphism<F>),
    /// No surjection among the candidates tried; not a proof of absence.
    Exhausted { tried: usize },
}

impl<F: Field> HvResult<F> {
    pub fn is_found(&self) -> bool {
        matches!(self, HvResult::Found(_))
    }
}

/// Looks for an epimorphism from the injective hull `E` of `k` onto the
/// maximal ideal, among the basis of `Hom_Q(E, 𝔮)` and `budget` seeded
/// random combinations.
pub fn hv_epi_search<F: Field>(q: &Arc<FdAlgebra<F>>, budget: usize) -> Result<HvResult<F>, ColengthError> {
    let f = q.field();
    if f.characteristic() == 2 {
        return Err(ColengthError::CharTwo);
    }
    let e = FdModule::regular(q).dual(0).without_degrees();
    let ideal = FdModule::regular(q).submodule(&q.max_ideal()).without_degrees();
    let target_dim = ideal.dim();
    let homs = hom_space(&e, &ideal);
    let wrap = |m: Matrix<F>| -> Result<HvResult<F>, ColengthError> {
        Ok(HvResult::Found(ModuleMorphism::new(e.clone(), ideal.clone(), m)?))
    };
    if target_dim == 0 {
        return wrap(Matrix::zeros(f, 0, e.dim()));
    }
    let mut tried = 0;
    for h in &homs {
        tried += 1;
        if h.rank() == target_dim {
            return wrap(h.clone());
        }
    }
    if !homs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..budget {
            tried += 1;
            let h = random_combination(f, &mut rng, &homs);
            if h.rank() == target_dim {
                return wrap(h);
            }
        }
    }
    Ok(HvResult::Exhausted { tried })
}

#[cfg(test)]
mod tests;
