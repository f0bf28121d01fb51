//! Seeded property suites over `GF(101)`, shared by `random-suite` and the
//! acceptance tests.

use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use gorsum_core::colength::trivial_extension_cover;
use gorsum_core::random::{
    augmentation, fiber_product_over_k, random_gorenstein, random_gorenstein_pair, random_graded_algebra,
    random_homogeneous_relations, random_surjection, rng,
};
use gorsum_core::sums::Grading;
use gorsum_core::Field as _;
use gorsum_core::{
    amalgamated_duplication, evaluate_formula, fiber_product_map, golod_test, gorenstein_connected_sum, hv_epi_search,
    poincare_series, split_socle, teter_test, AlgebraMorphism, FdAlgebra, FdModule, FormulaId, FormulaInput,
    FormulaInputs, GolodVerdict, GroebnerBasis, Matrix, Poly, PolyRing, PrimeField, SumsError, TruncatedSeries,
};

/// Series truncation used by the suites.
pub const ORDER: usize = 6;
pub const BUDGET: usize = gorsum_core::DEFAULT_BUDGET;
/// Fiber products of two length-10 factors outgrow the default budget by step 5.
pub const LARGE_BUDGET: usize = 1_000_000;

pub const SUITES: [&str; 9] = [
    "identities",
    "dress-kramer",
    "golod-gorenstein",
    "golod-bound",
    "golod-composites",
    "connected-sum-poincare",
    "colength",
    "groebner",
    "audits",
];

type F = PrimeField;
type Alg = Arc<FdAlgebra<F>>;
type Check = Result<(), String>;

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Suite-specific tallies.
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn gf101() -> F {
    PrimeField::new(101).expect("101 is prime")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn inputs(pairs: Vec<(&str, FormulaInput)>) -> FormulaInputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn hilbert(a: &FdAlgebra<F>, order: usize) -> Result<TruncatedSeries, String> {
    Ok(TruncatedSeries::from_counts(&a.hilbert().ok_or("not graded")?, order))
}

fn pk(a: &Alg) -> Result<TruncatedSeries, String> {
    poincare_series(&FdModule::residue_field(a), ORDER, BUDGET).map_err(err)
}

fn socle_quotient(a: &Alg) -> Result<AlgebraMorphism<F>, String> {
    Ok(FdAlgebra::quotient(a, &a.socle()).map_err(err)?.1)
}

fn describe(a: &FdAlgebra<F>) -> String {
    match a.presentation() {
        Some(p) => {
            let rels: Vec<String> = p.relations().iter().map(|r| p.ring().format(r)).collect();
            format!("{}/({})", p.ring().describe(), rels.join(", "))
        }
        None => format!("algebra of length {}", a.length()),
    }
}

/// Runs `count` cases of the named suite from `seed`.
pub fn run_suite(name: &str, count: usize, seed: u64) -> Option<SuiteResult> {
    let start = Instant::now();
    let mut g = rng(seed);
    let mut res =
        SuiteResult { name: name.to_string(), cases: count, failures: Vec::new(), notes: Vec::new(), seconds: 0.0 };
    let mut tally = [0usize; 4];
    for i in 0..count {
        let outcome = match name {
            "identities" => identities(&mut g, &mut tally),
            "dress-kramer" => dress_kramer(&mut g),
            "golod-gorenstein" => golod_gorenstein(&mut g),
            "golod-bound" => golod_bound(&mut g, &mut tally),
            "golod-composites" => golod_composites(&mut g, &mut tally),
            "connected-sum-poincare" => connected_sum_poincare(&mut g),
            "colength" => colength(&mut g, &mut tally),
            "groebner" => groebner(&mut g),
            "audits" => audits(&mut g),
            _ => return None,
        };
        if let Err(e) = outcome {
            res.failures.push(format!("case {i}: {e}"));
        }
    }
    res.notes = match name {
        "identities" => vec![format!("a-invariant gate: {} accepted, {} refused", tally[0], tally[1])],
        "golod-bound" => vec![format!("{} of the surjections were Golod", tally[0])],
        "golod-composites" => vec![format!("{} triples with a Golod composite", tally[0])],
        "colength" => vec![format!("{} epimorphisms found, {} symmetric forms found", tally[0], tally[1])],
        _ => Vec::new(),
    };
    res.seconds = start.elapsed().as_secs_f64();
    Some(res)
}

/// Length, Hilbert series and type identities for fiber products and
/// connected sums over `k`, and the a-invariant gate.
fn identities(g: &mut ChaCha8Rng, tally: &mut [usize; 4]) -> Check {
    let f = gf101();
    let r = random_graded_algebra(&f, g, 10);
    let s = random_graded_algebra(&f, g, 10);
    let ctx = || format!("R = {}, S = {}", describe(&r), describe(&s));
    let fp = fiber_product_over_k(&r, &s);
    let p = fp.algebra();
    p.audit().map_err(err)?;
    ensure(p.length() + 1 == r.length() + s.length(), || format!("fiber product length, {}", ctx()))?;
    let order = 10;
    let want = evaluate_formula(
        FormulaId::HilbProd,
        &inputs(vec![
            ("H_R", hilbert(&r, order)?.into()),
            ("H_S", hilbert(&s, order)?.into()),
            ("H_T", TruncatedSeries::one(order).into()),
        ]),
        order,
    )
    .map_err(err)?;
    ensure(hilbert(p, order)? == want, || format!("fiber product Hilbert series, {}", ctx()))?;
    let (tr, ts, tp) = (r.type_(), s.type_(), p.type_());
    ensure(tp <= tr + ts && tp + 1 >= tr + ts, || format!("type {tp} against {tr} + {ts}, {}", ctx()))?;

    // the gate: unequal a-invariants must be refused
    let a = random_gorenstein(&f, g, 1, 10);
    let b = random_gorenstein(&f, g, 1, 10);
    let ctx = || format!("R = {}, S = {}", describe(&a), describe(&b));
    let (a_r, a_s) = (a.a_invariant().unwrap_or(0), b.a_invariant().unwrap_or(0));
    match gorenstein_connected_sum(&augmentation(&a), &augmentation(&b), Grading::Auto) {
        Err(SumsError::AInvariantMismatch { .. }) if a_r != a_s => {
            tally[1] += 1;
            let (sum, _) =
                gorenstein_connected_sum(&augmentation(&a), &augmentation(&b), Grading::Ungraded).map_err(err)?;
            ensure(sum.q().length() + 2 == a.length() + b.length(), || {
                format!("ungraded connected sum length, {}", ctx())
            })?;
        }
        Err(e) => return Err(format!("{e}, {}", ctx())),
        Ok(_) if a_r != a_s => return Err(format!("unequal a-invariants accepted, {}", ctx())),
        Ok(_) => tally[0] += 1,
    }
    let (a, b) = random_gorenstein_pair(&f, g, 1, 10);
    sum_identities(&a, &b, order)
}

/// Graded connected sum over `k` of two Gorenstein algebras of equal
/// a-invariant: length and Hilbert series.
fn sum_identities(a: &Arc<FdAlgebra<F>>, b: &Arc<FdAlgebra<F>>, order: usize) -> Check {
    let ctx = || format!("R = {}, S = {}", describe(a), describe(b));
    let a_r = a.a_invariant().unwrap_or(0);
    let (sum, d) = gorenstein_connected_sum(&augmentation(a), &augmentation(b), Grading::Auto).map_err(err)?;
    let q = sum.q();
    q.audit().map_err(err)?;
    ensure(q.is_gorenstein(), || format!("connected sum not Gorenstein, {}", ctx()))?;
    ensure(q.length() + 2 == a.length() + b.length(), || format!("connected sum length, {}", ctx()))?;
    let ha = hilbert(a, order)?;
    let hb = hilbert(b, order)?;
    let hv = TruncatedSeries::from_counts(&degree_counts(d.v().degrees().unwrap_or(&[0])), order);
    let sum_want = evaluate_formula(
        FormulaId::HilbSum,
        &inputs(vec![
            ("H_R", ha.clone().into()),
            ("H_S", hb.clone().into()),
            ("H_T", TruncatedSeries::one(order).into()),
            ("H_V", hv.into()),
        ]),
        order,
    )
    .map_err(err)?;
    let gor_want = evaluate_formula(
        FormulaId::HilbSumGor,
        &inputs(vec![
            ("H_R", ha.into()),
            ("H_S", hb.into()),
            ("H_T", TruncatedSeries::one(order).into()),
            ("a", (a_r as i64).into()),
        ]),
        order,
    )
    .map_err(err)?;
    let got = hilbert(q, order)?;
    ensure(got == sum_want, || format!("connected sum Hilbert series, {}", ctx()))?;
    ensure(got == gor_want, || format!("Gorenstein connected sum Hilbert series, {}", ctx()))
}

fn degree_counts(degs: &[i32]) -> Vec<u64> {
    let top = degs.iter().copied().max().unwrap_or(0).max(0) as usize;
    let mut out = vec![0u64; top + 1];
    for &d in degs {
        out[d.max(0) as usize] += 1;
    }
    out
}

/// Poincaré series over `R ×_k S` of `k` and of `R / soc R`.
fn dress_kramer(g: &mut ChaCha8Rng) -> Check {
    let f = gf101();
    let r = random_graded_algebra(&f, g, 10);
    let s = random_graded_algebra(&f, g, 10);
    let ctx = || format!("R = {}, S = {}", describe(&r), describe(&s));
    let fp = fiber_product_over_k(&r, &s);
    let (prk, psk) = (pk(&r)?, pk(&s)?);
    let m = FdModule::regular(&r).quotient(&r.socle());
    let prm = poincare_series(&m, ORDER, BUDGET).map_err(err)?;
    let got = poincare_series(&m.restrict(fp.rho()).map_err(err)?, ORDER, LARGE_BUDGET).map_err(err)?;
    let want = evaluate_formula(
        FormulaId::DressKramer,
        &inputs(vec![("P_R_M", prm.into()), ("P_R_k", prk.clone().into()), ("P_S_k", psk.clone().into())]),
        ORDER,
    )
    .map_err(err)?;
    ensure(got == want, || format!("M = R/soc R: {got} != {want}, {}", ctx()))?;
    let got_k = poincare_series(&FdModule::residue_field(fp.algebra()), ORDER, LARGE_BUDGET).map_err(err)?;
    let want_k = evaluate_formula(
        FormulaId::DressKramer,
        &inputs(vec![("P_R_M", prk.clone().into()), ("P_R_k", prk.into()), ("P_S_k", psk.into())]),
        ORDER,
    )
    .map_err(err)?;
    ensure(got_k == want_k, || format!("M = k: {got_k} != {want_k}, {}", ctx()))
}

fn golod_gorenstein(g: &mut ChaCha8Rng) -> Check {
    let q = random_gorenstein(&gf101(), g, 2, 9);
    let rep = golod_test(&socle_quotient(&q)?, ORDER, BUDGET).map_err(err)?;
    ensure(rep.verdict == GolodVerdict::GolodUpTo(ORDER), || format!("{:?} for {}", rep.verdict, describe(&q)))
}

fn golod_bound(g: &mut ChaCha8Rng, tally: &mut [usize; 4]) -> Check {
    let p = random_graded_algebra(&gf101(), g, 7);
    let kappa = random_surjection(&p, g);
    let rep = golod_test(&kappa, ORDER, BUDGET).map_err(err)?;
    if rep.verdict.is_golod() {
        tally[0] += 1;
    }
    ensure(rep.bound_holds, || format!("bound fails for a quotient of {}", describe(&p)))?;
    if let Some(b) = &rep.special_bound {
        ensure(b == &rep.bound, || format!("special bound differs for a quotient of {}", describe(&p)))?;
    }
    Ok(())
}

/// `R ×_k S -> R #_k S -> R' ×_k S'`: the composite is Golod exactly when
/// both factors are.
fn golod_composites(g: &mut ChaCha8Rng, tally: &mut [usize; 4]) -> Check {
    let f = gf101();
    let r = random_gorenstein(&f, g, 1, 6);
    let s = random_gorenstein(&f, g, 1, 6);
    let ctx = || format!("R = {}, S = {}", describe(&r), describe(&s));
    let (sum, _) = gorenstein_connected_sum(&augmentation(&r), &augmentation(&s), Grading::Ungraded).map_err(err)?;
    let (phi, psi) = (socle_quotient(&r)?, socle_quotient(&s)?);
    let target = fiber_product_over_k(phi.target(), psi.target());
    let composite = fiber_product_map(sum.fiber(), &target, &phi, &psi).map_err(err)?;
    let second = sum.descend(&composite).map_err(err)?;
    let golod = |k: &AlgebraMorphism<F>| golod_test(k, ORDER, BUDGET).map(|r| r.verdict.is_golod()).map_err(err);
    let (c, a, b) = (golod(&composite)?, golod(sum.kappa())?, golod(&second)?);
    if c {
        tally[0] += 1;
    }
    ensure(c == (a && b), || format!("composite {c}, factors {a} and {b}, {}", ctx()))
}

fn connected_sum_poincare(g: &mut ChaCha8Rng) -> Check {
    let f = gf101();
    let (r, s) = random_gorenstein_pair(&f, g, 3, 4);
    let ctx = || format!("R = {}, S = {}", describe(&r), describe(&s));
    let (sum, _) = gorenstein_connected_sum(&augmentation(&r), &augmentation(&s), Grading::Auto).map_err(err)?;
    let (r1, s1) = (socle_quotient(&r)?.target().clone(), socle_quotient(&s)?.target().clone());
    let (pr, ps) = (pk(&r1)?, pk(&s1)?);
    let got = pk(sum.q())?;
    let want = evaluate_formula(
        FormulaId::ConnsumPoincare,
        &inputs(vec![
            ("P_R'_N", pr.clone().into()),
            ("P_R'_k", pr.clone().into()),
            ("P_S'_k", ps.clone().into()),
            ("r", 1.into()),
        ]),
        ORDER,
    )
    .map_err(err)?;
    ensure(got == want, || format!("{got} != {want}, {}", ctx()))?;
    let series_q = evaluate_formula(
        FormulaId::SeriesQ,
        &inputs(vec![("P_R'_k", pr.into()), ("P_S'_k", ps.into()), ("r", 1.into())]),
        ORDER,
    )
    .map_err(err)?;
    ensure(got == series_q, || format!("reciprocal identity {got} != {series_q}, {}", ctx()))
}

/// Epimorphism search against the symmetric-form test, witness validity and
/// the trivial-extension bound.
fn colength(g: &mut ChaCha8Rng, tally: &mut [usize; 4]) -> Check {
    let q = random_graded_algebra(&gf101(), g, 8);
    let ctx = || describe(&q);
    let hv = hv_epi_search(&q, 32).map_err(err)?;
    let teter = teter_test(&q).map_err(err)?;
    if hv.is_found() {
        tally[0] += 1;
        ensure(teter.is_some(), || format!("epimorphism without symmetric form for {}", ctx()))?;
    }
    if let Some(w) = &teter {
        tally[1] += 1;
        let a = w.cover.algebra();
        ensure(a.is_gorenstein() && a.length() == q.length() + 1, || format!("bad witness for {}", ctx()))?;
        ensure(w.cover.map().kernel() == a.socle(), || format!("witness kernel is not the socle for {}", ctx()))?;
    }
    let te = trivial_extension_cover(&q).map_err(err)?;
    ensure(te.gap() == q.length(), || format!("trivial extension gap {} for {}", te.gap(), ctx()))?;
    ensure(te.algebra().is_gorenstein(), || format!("trivial extension not Gorenstein for {}", ctx()))
}

/// Standard monomials of a Gröbner basis against ranks of degree slices.
fn groebner(g: &mut ChaCha8Rng) -> Check {
    let f = gf101();
    let nvars = g.gen_range(1..=3usize);
    let top = g.gen_range(2..=4u32);
    let names = [("x", 1), ("y", 1), ("z", 1)];
    let ring = PolyRing::new(&f, &names[..nvars]).map_err(err)?;
    let rels = random_homogeneous_relations(g, nvars, top);
    let gens = rels.iter().map(|r| ring.parse(r)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let gb = GroebnerBasis::compute(&ring, &gens);
    ensure(gb.satisfies_criterion(), || format!("Buchberger criterion fails for {rels:?}"))?;
    let std = gb.standard_monomials().map_err(err)?;
    for d in 0..=top {
        let count = std.iter().filter(|m| m.degree() == d).count();
        let slice = slice_dim(&ring, &gens, d);
        ensure(count == slice, || {
            format!("degree {d}: {count} standard monomials, slice dimension {slice}, {rels:?}")
        })?;
    }
    Ok(())
}

/// `dim (k[x]/I)_d` from the span of `m * g` with `deg m + deg g = d`.
pub fn slice_dim(ring: &PolyRing<F>, gens: &[Poly<F>], d: u32) -> usize {
    let basis = ring.monomials_of_degree(d);
    let f = ring.field();
    let mut rows = Vec::new();
    for p in gens {
        let Some(dg) = p.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - dg) {
            let prod = ring.mul_term(&f.one(), &m, p);
            rows.push(
                basis.iter().map(|b| prod.coefficient(b).cloned().unwrap_or_else(|| f.zero())).collect::<Vec<_>>(),
            );
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, basis.len(), &rows).rank() };
    basis.len() - rank
}

/// Associativity and unit audits of every construction.
fn audits(g: &mut ChaCha8Rng) -> Check {
    let f = gf101();
    let r = random_graded_algebra(&f, g, 8);
    let s = random_graded_algebra(&f, g, 8);
    r.audit().map_err(err)?;
    fiber_product_over_k(&r, &s).algebra().audit().map_err(err)?;
    let (a, b) = random_gorenstein_pair(&f, g, 2, 8);
    let (sum, _) = gorenstein_connected_sum(&augmentation(&a), &augmentation(&b), Grading::Auto).map_err(err)?;
    sum.p().audit().map_err(err)?;
    sum.q().audit().map_err(err)?;
    let ideal = r.max_ideal_power(2);
    amalgamated_duplication(&r, &ideal).map_err(err)?.algebra().audit().map_err(err)?;
    let split = split_socle(&r, None).map_err(err)?;
    split.product.algebra().audit().map_err(err)?;
    split.b.audit().map_err(err)?;
    split.c.audit().map_err(err)?;
    trivial_extension_cover(&r).map_err(err)?.algebra().audit().map_err(err)?;
    socle_quotient(&a)?.target().audit().map_err(err)
}
