//! Minimal free resolutions over finite-dimensional local algebras.
//!
//! A free module `A^b` is stored on the basis `(g, j) -> g * n + j`, where `g`
//! indexes the free generators and `j` the basis of `A` (`n = dim A`). Syzygy
//! modules are computed as kernels with a sparse echelon form that records the
//! history of every row, so each vector reducing to zero is a kernel element.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraMorphism, FdAlgebra, FdModule};
use crate::field::Field;
use crate::linalg::{sparse_from_dense, SparseEchelon, SparseVec};
use crate::series::{evaluate_formula, FormulaId, FormulaInputs, SeriesError, TruncatedSeries};

/// Largest free module (in `k`-dimensions) a resolution may build by default.
pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("free module in step {step} has dimension {dim}, above the budget {budget}")]
    StepBudgetExceeded { step: usize, dim: usize, budget: usize },
    #[error("image of d_{step} differs from the kernel of d_{prev}", prev = step - 1)]
    NotExact { step: usize },
    #[error("differential d_{step} has an entry outside the maximal ideal")]
    NotMinimal { step: usize },
    #[error("the map is not surjective")]
    NotSurjective,
    #[error("deviation {index} came out negative ({value})")]
    NegativeDeviation { index: usize, value: i128 },
    #[error("truncation order must be at least {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Betti numbers and differentials of a minimal free resolution, truncated
/// after `F_N`.
#[derive(Debug, Clone)]
pub struct BettiTable<F: Field> {
    algebra: Arc<FdAlgebra<F>>,
    betti: Vec<usize>,
    /// `generators[i][g]`: image of the `g`-th basis element of `F_i`; in the
    /// module for `i = 0`, in `F_{i-1}` otherwise.
    generators: Vec<Vec<SparseVec<F::Elem>>>,
    degrees: Option<Vec<Vec<i32>>>,
}

impl<F: Field> BettiTable<F> {
    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }

    /// `b_0, ..., b_N`.
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn steps(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn poincare(&self) -> TruncatedSeries {
        let c: Vec<i128> = self.betti.iter().map(|&b| b as i128).collect();
        TruncatedSeries::new(&c, self.steps())
    }

    /// Degrees of the free generators in each step (graded input only).
    pub fn generator_degrees(&self) -> Option<&[Vec<i32>]> {
        self.degrees.as_deref()
    }

    /// Images of the basis of `F_i` (see the field docs), as sparse vectors.
    pub fn differential(&self, i: usize) -> &[SparseVec<F::Elem>] {
        &self.generators[i]
    }

    /// `(degree, count)` pairs for step `i`.
    pub fn graded_betti(&self, i: usize) -> Option<Vec<(i32, usize)>> {
        let d = &self.degrees.as_ref()?[i];
        let mut out: Vec<(i32, usize)> = Vec::new();
        let mut sorted = d.clone();
        sorted.sort_unstable();
        for x in sorted {
            match out.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        Some(out)
    }
}

/// `e_j * v` for `v` in a free module of rank `rank` over `a`.
fn free_act<F: Field>(a: &FdAlgebra<F>, j: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let f = a.field();
    let n = a.dim();
    let table = a.table();
    let mut out: Vec<(usize, F::Elem)> = Vec::new();
    for (idx, c) in v {
        let (g, l) = (idx / n, idx % n);
        for (k, x) in &table[j * n + l] {
            out.push((g * n + k, f.mul(c, x)));
        }
    }
    normalize(f, out)
}

fn normalize<F: Field>(f: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = f.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}

/// Minimal free resolution of `m` up to `F_steps`.
pub fn minimal_free_resolution<F: Field>(
    m: &FdModule<F>,
    steps: usize,
    budget: usize,
) -> Result<BettiTable<F>, ResolutionError> {
    let a = m.algebra().clone();
    let f = a.field().clone();
    let n = a.dim();
    let mult_gens = a.min_generator_indices();
    let graded = a.degrees().is_some() && m.degrees().is_some();
    let adeg: Vec<i32> = a.degrees().map(|d| d.iter().map(|&x| x as i32).collect()).unwrap_or_default();

    // module action as sparse columns
    let act: Vec<Vec<SparseVec<F::Elem>>> =
        (0..n).map(|j| (0..m.dim()).map(|c| sparse_from_dense(&f, &m.action(j).column(c))).collect()).collect();
    let module_act = |j: usize, v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        for (c, x) in v {
            for (r, y) in &act[j][*c] {
                out.push((*r, f.mul(x, y)));
            }
        }
        normalize(&f, out)
    };

    // generators of M: basis vectors off the pivots of mM
    let mm = m.max_ideal_times();
    let gens0: Vec<SparseVec<F::Elem>> = mm.complement_indices().into_iter().map(|c| vec![(c, f.one())]).collect();
    let mut degrees: Vec<Vec<i32>> = Vec::new();
    if graded {
        let md = m.degrees().unwrap();
        degrees.push(gens0.iter().map(|g| md[g[0].0]).collect());
    }
    let mut generators = vec![gens0];
    let mut betti = vec![generators[0].len()];
    let mut prev_kernel_dim = m.dim();

    for step in 0..steps {
        let gens = &generators[step];
        let b = gens.len();
        let dim = b * n;
        if dim > budget {
            return Err(ResolutionError::StepBudgetExceeded { step, dim, budget });
        }
        let target_dim = if step == 0 { m.dim() } else { betti[step - 1] * n };
        // kernel of d_step: F_step -> previous
        let mut ech = SparseEchelon::with_history(&f, target_dim, dim);
        let mut kernel: Vec<SparseVec<F::Elem>> = Vec::new();
        for (g, z) in gens.iter().enumerate() {
            for j in 0..n {
                let img = if step == 0 { module_act(j, z) } else { free_act(&a, j, z) };
                if let Some(k) = ech.insert_tagged(&img, &vec![(g * n + j, f.one())]) {
                    kernel.push(k);
                }
            }
        }
        if ech.rank() != prev_kernel_dim {
            return Err(ResolutionError::NotExact { step });
        }
        prev_kernel_dim = kernel.len();
        drop(ech);

        // minimal generators of the kernel: complement of m * kernel
        let deg_of = |v: &SparseVec<F::Elem>| -> i32 {
            let (idx, _) = v[0];
            degrees[step][idx / n] + adeg[idx % n]
        };
        if graded {
            kernel.sort_by_key(|v| deg_of(v));
        }
        let mut span = SparseEchelon::new(&f, dim);
        for z in &kernel {
            for &u in &mult_gens {
                let p = free_act(&a, u, z);
                if !p.is_empty() {
                    span.insert(&p);
                }
            }
        }
        let mut next = Vec::new();
        for z in kernel {
            if span.insert(&z) {
                if z.iter().any(|(idx, _)| idx % n == 0) {
                    return Err(ResolutionError::NotMinimal { step: step + 1 });
                }
                next.push(z);
            }
        }
        if graded {
            let d: Vec<i32> = next.iter().map(deg_of).collect();
            degrees.push(d);
        }
        betti.push(next.len());
        generators.push(next);
    }
    Ok(BettiTable { algebra: a, betti, generators, degrees: graded.then_some(degrees) })
}

/// Truncated Poincaré series `P^A_M` to `order`.
pub fn poincare_series<F: Field>(
    m: &FdModule<F>,
    order: usize,
    budget: usize,
) -> Result<TruncatedSeries, ResolutionError> {
    Ok(minimal_free_resolution(m, order, budget)?.poincare())
}

/// Outcome of comparing `P^Q_k` with the upper bound for a surjection `P -> Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GolodVerdict {
    /// Equality through `z^N`.
    GolodUpTo(usize),
    /// First coefficient where `P^Q_k` falls short of the bound.
    NotGolodAt { degree: usize, lhs: i128, rhs: i128 },
}

impl GolodVerdict {
    pub fn is_golod(&self) -> bool {
        matches!(self, GolodVerdict::GolodUpTo(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolodReport {
    pub verdict: GolodVerdict,
    /// `P^Q_k`.
    pub target_series: TruncatedSeries,
    /// `P^P_k`.
    pub source_series: TruncatedSeries,
    /// `P^P_Q`.
    pub relative_series: TruncatedSeries,
    /// `P^P_k / (1 + z - z P^P_Q)`.
    pub bound: TruncatedSeries,
    /// The bound with `P^P_Q = 1 + r z P^P_k`, present when the maximal ideal
    /// kills the kernel.
    pub special_bound: Option<TruncatedSeries>,
    /// `P^Q_k ≼ bound`; always expected to hold.
    pub bound_holds: bool,
}

/// Compares `P^Q_k` with the Golod bound through `z^order`.
pub fn golod_test<F: Field>(
    kappa: &AlgebraMorphism<F>,
    order: usize,
    budget: usize,
) -> Result<GolodReport, ResolutionError> {
    if !kappa.is_surjective() {
        return Err(ResolutionError::NotSurjective);
    }
    let (p, q) = (kappa.source(), kappa.target());
    let pq_k = poincare_series(&FdModule::residue_field(q), order, budget)?;
    let pp_k = poincare_series(&FdModule::residue_field(p), order, budget)?;
    let q_over_p = FdModule::regular(q).restrict(kappa).expect("target of the map");
    let pp_q = poincare_series(&q_over_p, order, budget)?;
    let mut inputs = FormulaInputs::new();
    inputs.insert("P_P_k".into(), pp_k.clone().into());
    inputs.insert("P_P_Q".into(), pp_q.clone().into());
    let bound = evaluate_formula(FormulaId::GolodBound, &inputs, order)?;

    let ker = kappa.kernel();
    let special_bound = if p.ideal_product(&p.max_ideal(), &ker).dim() == 0 {
        inputs.insert("r".into(), (ker.dim() as i64).into());
        Some(evaluate_formula(FormulaId::SpecialGolod, &inputs, order)?)
    } else {
        None
    };
    let verdict = match pq_k.first_difference(&bound) {
        None => GolodVerdict::GolodUpTo(order),
        Some(d) => GolodVerdict::NotGolodAt { degree: d, lhs: pq_k.coeff(d), rhs: bound.coeff(d) },
    };
    Ok(GolodReport {
        verdict,
        bound_holds: pq_k.termwise_leq(&bound),
        target_series: pq_k,
        source_series: pp_k,
        relative_series: pp_q,
        bound,
        special_bound,
    })
}

/// Deviations `ε_1, ..., ε_N` and the complete-intersection verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviations {
    /// `eps[i - 1] = ε_i`.
    pub eps: Vec<i128>,
    pub order: usize,
}

/// `P = (1 + z)^b / (1 - z)^c` through the computed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiVerdict {
    CompleteIntersectionUpTo { order: usize, codim: i128, b: i128, c: i128 },
    NotCompleteIntersection { first_nonzero: usize },
}

impl Deviations {
    pub fn eps(&self, i: usize) -> i128 {
        self.eps[i - 1]
    }

    pub fn verdict(&self) -> CiVerdict {
        match (3..=self.order).find(|&i| self.eps(i) != 0) {
            Some(i) => CiVerdict::NotCompleteIntersection { first_nonzero: i },
            None => {
                let (e1, e2) = (self.eps(1), self.eps(2));
                CiVerdict::CompleteIntersectionUpTo { order: self.order, codim: e2, b: e1 - e2, c: e2 }
            }
        }
    }
}

/// Factors `p` as `∏_{i odd} (1 + z^i)^{ε_i} / ∏_{i even} (1 - z^i)^{ε_i}`.
pub fn deviations_from_series(p: &TruncatedSeries) -> Result<Deviations, ResolutionError> {
    let order = p.order();
    let mut cur = TruncatedSeries::one(order);
    let mut eps = Vec::with_capacity(order);
    for i in 1..=order {
        let e = p.coeff(i) - cur.coeff(i);
        if e < 0 {
            return Err(ResolutionError::NegativeDeviation { index: i, value: e });
        }
        eps.push(e);
        let base = if i % 2 == 1 {
            &TruncatedSeries::one(order) + &TruncatedSeries::monomial(1, i, order)
        } else {
            (&TruncatedSeries::one(order) - &TruncatedSeries::monomial(1, i, order)).reciprocal()?
        };
        for _ in 0..e {
            cur = &cur * &base;
        }
    }
    Ok(Deviations { eps, order })
}

/// Deviations of `a` read off `P^A_k` through `z^order`.
pub fn deviations<F: Field>(a: &Arc<FdAlgebra<F>>, order: usize, budget: usize) -> Result<Deviations, ResolutionError> {
    if order < 3 {
        return Err(ResolutionError::OrderTooSmall(3));
    }
    deviations_from_series(&poincare_series(&FdModule::residue_field(a), order, budget)?)
}
