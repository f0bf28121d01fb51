//! Seeded generators of small artinian algebras for property suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraMorphism, FdAlgebra, Vector};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::sums::{fiber_product, FiberProduct};

pub use rand::SeedableRng;

/// Default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 20_061;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    (0..=degree)
        .rev()
        .flat_map(|a| {
            monomials(nvars - 1, degree - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn monomial_string(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(VARS)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn variables(nvars: usize) -> Vec<(&'static str, u32)> {
    VARS[..nvars].iter().map(|v| (*v, 1)).collect()
}

/// Homogeneous relations in `nvars` variables: a few monomials and binomials
/// of degree `>= 2`, plus every monomial of degree `top` so the quotient is
/// artinian.
pub fn random_homogeneous_relations<R: Rng>(rng: &mut R, nvars: usize, top: u32) -> Vec<String> {
    let mut rels: Vec<String> = monomials(nvars, top).iter().map(|m| monomial_string(m)).collect();
    let extra = rng.gen_range(0..=3);
    for _ in 0..extra {
        let d = rng.gen_range(2..=top.max(2));
        let mons = monomials(nvars, d);
        let a = mons.choose(rng).unwrap();
        if rng.gen_bool(0.5) {
            rels.push(monomial_string(a));
        } else {
            let b = mons.choose(rng).unwrap();
            if a != b {
                let c: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                rels.push(format!("{} + {}*{}", monomial_string(a), c, monomial_string(b)));
            }
        }
    }
    rels
}

/// A graded quotient of `k[x]` or `k[x, y]` of length `<= max_len`.
pub fn random_graded_algebra<F: Field, R: Rng>(f: &F, rng: &mut R, max_len: usize) -> Arc<FdAlgebra<F>> {
    loop {
        let nvars = rng.gen_range(1..=2);
        let top = rng.gen_range(2..=4);
        let rels = random_homogeneous_relations(rng, nvars, top);
        let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        if let Ok(a) = FdAlgebra::parse(f, &variables(nvars), &refs) {
            if a.length() >= 2 && a.length() <= max_len {
                return Arc::new(a);
            }
        }
    }
}

/// `k[vars]/(vars)^(s+1)`.
pub fn truncated_polynomial_ring<F: Field>(f: &F, nvars: usize, s: u32) -> Arc<FdAlgebra<F>> {
    let rels: Vec<String> = monomials(nvars, s + 1).iter().map(|m| monomial_string(m)).collect();
    let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
    Arc::new(FdAlgebra::parse(f, &variables(nvars), &refs).expect("monomial presentation"))
}

/// `A / ann(φ)`, the Gorenstein quotient defined by a linear form `φ` on `A`.
pub fn inverse_system_quotient<F: Field>(
    a: &Arc<FdAlgebra<F>>,
    phi: &[F::Elem],
) -> (Arc<FdAlgebra<F>>, AlgebraMorphism<F>) {
    let f = a.field();
    let n = a.dim();
    let rows: Vec<Vector<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.basis_product(i, j).iter().zip(phi).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
                .collect()
        })
        .collect();
    let ann = Subspace::kernel(&Matrix::from_rows(f, n, &rows));
    FdAlgebra::quotient(a, &ann).expect("φ is nonzero")
}

/// A graded Gorenstein algebra with `edim` in `min_edim..=3` and length at
/// most `max_len`, cut out by a random form of top degree.
pub fn random_gorenstein<F: Field, R: Rng>(f: &F, rng: &mut R, min_edim: usize, max_len: usize) -> Arc<FdAlgebra<F>> {
    loop {
        let nvars = rng.gen_range(min_edim.max(1)..=3);
        let s = rng.gen_range(1..=if nvars == 3 { 3 } else { 5 });
        let amb = truncated_polynomial_ring(f, nvars, s);
        let degs = amb.degrees().unwrap();
        let phi: Vector<F> = degs.iter().map(|&d| if d == s { f.random(rng) } else { f.zero() }).collect();
        if phi.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        let (q, _) = inverse_system_quotient(&amb, &phi);
        if q.edim() >= min_edim && q.length() <= max_len {
            return q;
        }
    }
}

/// The augmentation onto the ground field.
pub fn augmentation<F: Field>(a: &Arc<FdAlgebra<F>>) -> AlgebraMorphism<F> {
    let k = Arc::new(FdAlgebra::ground(a.field()));
    AlgebraMorphism::augmentation(a, &k).expect("local algebra")
}

/// `R ×_k S` for random graded factors of length `<= max_len`.
pub fn random_fiber_product<F: Field, R: Rng>(f: &F, rng: &mut R, max_len: usize) -> FiberProduct<F> {
    let r = random_graded_algebra(f, rng, max_len);
    let s = random_graded_algebra(f, rng, max_len);
    fiber_product_over_k(&r, &s)
}

/// `R ×_k S` along the augmentations.
pub fn fiber_product_over_k<F: Field>(r: &Arc<FdAlgebra<F>>, s: &Arc<FdAlgebra<F>>) -> FiberProduct<F> {
    fiber_product(&augmentation(r), &augmentation(s)).expect("augmentations are surjective")
}

/// Two Gorenstein algebras with the same socle degree, for graded connected
/// sums over `k`.
pub fn random_gorenstein_pair<F: Field, R: Rng>(
    f: &F,
    rng: &mut R,
    min_len: usize,
    max_len: usize,
) -> (Arc<FdAlgebra<F>>, Arc<FdAlgebra<F>>) {
    loop {
        let r = random_gorenstein(f, rng, 1, max_len);
        let s = random_gorenstein(f, rng, 1, max_len);
        if r.length() >= min_len && s.length() >= min_len && r.a_invariant() == s.a_invariant() {
            return (r, s);
        }
    }
}

/// `Q -> Q / (g)` for a random nonzero homogeneous `g` in the maximal ideal.
pub fn random_surjection<F: Field, R: Rng>(q: &Arc<FdAlgebra<F>>, rng: &mut R) -> AlgebraMorphism<F> {
    let f = q.field();
    if q.dim() == 1 {
        return AlgebraMorphism::identity(q);
    }
    let degs = q.degrees().map(|d| d.to_vec()).unwrap_or_else(|| vec![1; q.dim()]);
    let top = *degs.iter().max().unwrap();
    let d = rng.gen_range(1..=top);
    loop {
        let g: Vector<F> =
            degs.iter().enumerate().map(|(i, &e)| if i > 0 && e == d { f.random(rng) } else { f.zero() }).collect();
        if !q.is_zero_elem(&g) {
            return FdAlgebra::quotient(q, &q.ideal(&[g])).expect("proper ideal").1;
        }
    }
}
