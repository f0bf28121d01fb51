use std::sync::Arc;

use gorsum_core::algebra::check_presentation_iso;
use gorsum_core::random::{fiber_product_over_k, random_gorenstein_pair, random_graded_algebra, rng};
use gorsum_core::sums::Grading;
use gorsum_core::*;
use proptest::prelude::*;

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn hilbert_series(a: &FdAlgebra<PrimeField>, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_counts(&a.hilbert().unwrap(), order)
}

fn inputs(pairs: Vec<(&str, FormulaInput)>) -> FormulaInputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fiber_product_identities(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let r = random_graded_algebra(&f, &mut g, 8);
        let s = random_graded_algebra(&f, &mut g, 8);
        let fp = fiber_product_over_k(&r, &s);
        let p = fp.algebra();
        p.audit().unwrap();
        prop_assert_eq!(p.length(), r.length() + s.length() - 1);
        let order = 8;
        let want = evaluate_formula(FormulaId::HilbProd, &inputs(vec![
            ("H_R", hilbert_series(&r, order).into()),
            ("H_S", hilbert_series(&s, order).into()),
            ("H_T", TruncatedSeries::one(order).into()),
        ]), order).unwrap();
        prop_assert_eq!(hilbert_series(p, order), want);
        // type bounds over T = k: type R + type S >= type P >= type R + type S - 1
        let (tr, ts, tp) = (r.type_(), s.type_(), p.type_());
        prop_assert!(tr + ts >= tp && tp + 1 >= tr + ts);
        prop_assert!(tp >= 2);
        prop_assert!(!p.is_gorenstein());
    }

    #[test]
    fn gorenstein_sum_identities(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let (r, s) = random_gorenstein_pair(&f, &mut g, 2, 9);
        let k = Arc::new(FdAlgebra::ground(&f));
        let e_r = AlgebraMorphism::augmentation(&r, &k).unwrap();
        let e_s = AlgebraMorphism::augmentation(&s, &k).unwrap();
        let (sum, diagram) = gorenstein_connected_sum(&e_r, &e_s, Grading::Auto).unwrap();
        let q = sum.q();
        q.audit().unwrap();
        prop_assert!(q.is_gorenstein());
        prop_assert_eq!(q.length() + 2, r.length() + s.length());
        prop_assert_eq!(diagram.v().dim(), 1);
        let order = 8;
        let a = r.a_invariant().unwrap() as i64;
        let want = evaluate_formula(FormulaId::HilbSumGor, &inputs(vec![
            ("H_R", hilbert_series(&r, order).into()),
            ("H_S", hilbert_series(&s, order).into()),
            ("H_T", TruncatedSeries::one(order).into()),
            ("a", a.into()),
        ]), order).unwrap();
        prop_assert_eq!(hilbert_series(q, order), want);
    }
}

#[test]
fn fermat_sum_over_rationals() {
    let r = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^3"]).unwrap());
    let s = Arc::new(FdAlgebra::parse(&Rationals, &[("y", 1)], &["y^3"]).unwrap());
    let k = Arc::new(FdAlgebra::ground(&Rationals));
    let (sum, _) = gorenstein_connected_sum(
        &AlgebraMorphism::augmentation(&r, &k).unwrap(),
        &AlgebraMorphism::augmentation(&s, &k).unwrap(),
        Grading::Auto,
    )
    .unwrap();
    let q = sum.q();
    assert_eq!(q.length(), 4);
    assert!(q.is_gorenstein());
    let ring = PolyRing::new(&Rationals, &[("x", 1), ("y", 1)]).unwrap();
    let x = sum.element(&r.names()[0].1, &s.zero()).unwrap();
    let y = sum.element(&r.zero(), &s.names()[0].1).unwrap();
    // the identification of the socles fixes x^2 = c * y^2 for some c != 0
    let x2 = q.mul(&x, &x);
    let y2 = q.mul(&y, &y);
    let c =
        (1..x2.len()).find(|&i| !Rationals.is_zero(&y2[i])).map(|i| Rationals.div(&x2[i], &y2[i]).unwrap()).unwrap();
    let rel = format!("x^2 - ({})*y^2", Rationals.format(&c));
    let rels = vec![ring.parse(&rel).unwrap(), ring.parse("x*y").unwrap()];
    assert!(check_presentation_iso(&ring, &rels, q, &[x, y]).unwrap().is_iso());
}

#[test]
fn theorem_82_betti_numbers() {
    let f = gf101();
    let r = Arc::new(FdAlgebra::parse(&f, &[("x", 1)], &["x^3"]).unwrap());
    let s = Arc::new(FdAlgebra::parse(&f, &[("y", 1)], &["y^3"]).unwrap());
    let k = Arc::new(FdAlgebra::ground(&f));
    let (sum, _) = gorenstein_connected_sum(
        &AlgebraMorphism::augmentation(&r, &k).unwrap(),
        &AlgebraMorphism::augmentation(&s, &k).unwrap(),
        Grading::Auto,
    )
    .unwrap();
    let t = minimal_free_resolution(&FdModule::residue_field(sum.q()), 8, DEFAULT_BUDGET).unwrap();
    assert_eq!(t.betti(), &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
    let d = deviations(sum.q(), 8, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.verdict(), CiVerdict::CompleteIntersectionUpTo { order: 8, codim: 2, b: 0, c: 2 });
}
