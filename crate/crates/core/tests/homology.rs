use std::sync::Arc;

use gorsum_core::random::{
    augmentation, fiber_product_over_k, random_gorenstein, random_gorenstein_pair, random_graded_algebra,
    random_surjection, rng,
};
use gorsum_core::sums::Grading;
use gorsum_core::*;
use proptest::prelude::*;

const N: usize = 6;

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn pk(a: &Arc<FdAlgebra<PrimeField>>) -> TruncatedSeries {
    poincare_series(&FdModule::residue_field(a), N, DEFAULT_BUDGET).unwrap()
}

fn inputs(pairs: Vec<(&str, FormulaInput)>) -> FormulaInputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn socle_quotient(a: &Arc<FdAlgebra<PrimeField>>) -> AlgebraMorphism<PrimeField> {
    FdAlgebra::quotient(a, &a.socle()).unwrap().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn dress_kramer(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let r = random_graded_algebra(&f, &mut g, 5);
        let s = random_graded_algebra(&f, &mut g, 5);
        let fp = fiber_product_over_k(&r, &s);
        let (prk, psk) = (pk(&r), pk(&s));
        let m = FdModule::regular(&r).quotient(&r.socle());
        let prm = poincare_series(&m, N, DEFAULT_BUDGET).unwrap();
        let over_p = m.restrict(fp.rho()).unwrap();
        let got = poincare_series(&over_p, N, DEFAULT_BUDGET).unwrap();
        let want = evaluate_formula(FormulaId::DressKramer, &inputs(vec![
            ("P_R_M", prm.into()), ("P_R_k", prk.clone().into()), ("P_S_k", psk.clone().into()),
        ]), N).unwrap();
        prop_assert_eq!(got, want);
        let want_k = evaluate_formula(FormulaId::DressKramer, &inputs(vec![
            ("P_R_M", prk.clone().into()), ("P_R_k", prk.into()), ("P_S_k", psk.into()),
        ]), N).unwrap();
        prop_assert_eq!(pk(fp.algebra()), want_k);
    }

    #[test]
    fn golod_bound_is_an_upper_bound(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let p = random_graded_algebra(&f, &mut g, 7);
        let kappa = random_surjection(&p, &mut g);
        let rep = golod_test(&kappa, N, DEFAULT_BUDGET).unwrap();
        prop_assert!(rep.bound_holds);
        if let Some(b) = &rep.special_bound {
            prop_assert_eq!(b, &rep.bound);
        }
    }

    #[test]
    fn socle_quotients_of_gorenstein_rings_are_golod(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let q = random_gorenstein(&f, &mut g, 2, 9);
        let rep = golod_test(&socle_quotient(&q), N, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(rep.verdict, GolodVerdict::GolodUpTo(N));
    }

    #[test]
    fn poincare_series_of_connected_sums(seed in any::<u64>()) {
        let f = gf101();
        let mut g = rng(seed);
        let (r, s) = random_gorenstein_pair(&f, &mut g, 3, 4);
        let (sum, _) = gorenstein_connected_sum(&augmentation(&r), &augmentation(&s), Grading::Auto).unwrap();
        let (r1, s1) = (socle_quotient(&r).target().clone(), socle_quotient(&s).target().clone());
        let (pr, ps) = (pk(&r1), pk(&s1));
        let got = pk(sum.q());
        let want = evaluate_formula(FormulaId::ConnsumPoincare, &inputs(vec![
            ("P_R'_N", pr.clone().into()), ("P_R'_k", pr.clone().into()), ("P_S'_k", ps.clone().into()), ("r", 1.into()),
        ]), N).unwrap();
        prop_assert_eq!(&got, &want);
        let q = evaluate_formula(FormulaId::SeriesQ, &inputs(vec![
            ("P_R'_k", pr.into()), ("P_S'_k", ps.into()), ("r", 1.into()),
        ]), N).unwrap();
        prop_assert_eq!(got, q);
    }
}

/// `R ×_k S -> R #_k S -> R' ×_k S'` for Gorenstein `R`, `S`.
fn triple(
    r: &Arc<FdAlgebra<PrimeField>>,
    s: &Arc<FdAlgebra<PrimeField>>,
) -> (AlgebraMorphism<PrimeField>, AlgebraMorphism<PrimeField>, AlgebraMorphism<PrimeField>) {
    let (sum, _) = gorenstein_connected_sum(&augmentation(r), &augmentation(s), Grading::Ungraded).unwrap();
    let (phi, psi) = (socle_quotient(r), socle_quotient(s));
    let target = fiber_product_over_k(phi.target(), psi.target());
    let composite = fiber_product_map(sum.fiber(), &target, &phi, &psi).unwrap();
    let second = sum.descend(&composite).unwrap();
    (sum.kappa().clone(), second, composite)
}

#[test]
fn golod_property_of_composites() {
    let f = gf101();
    let mut g = rng(11);
    for _ in 0..6 {
        let r = random_gorenstein(&f, &mut g, 1, 6);
        let s = random_gorenstein(&f, &mut g, 1, 6);
        let (first, second, composite) = triple(&r, &s);
        let v = |k: &AlgebraMorphism<PrimeField>| golod_test(k, N, DEFAULT_BUDGET).unwrap().verdict.is_golod();
        assert_eq!(v(&composite), v(&first) && v(&second));
    }
}

#[test]
fn fiber_products_of_golod_maps() {
    let f = gf101();
    let mut g = rng(5);
    for _ in 0..4 {
        let r = random_gorenstein(&f, &mut g, 2, 4);
        let s = random_gorenstein(&f, &mut g, 2, 4);
        let (phi, psi) = (socle_quotient(&r), socle_quotient(&s));
        let src = fiber_product_over_k(&r, &s);
        let tgt = fiber_product_over_k(phi.target(), psi.target());
        let map = fiber_product_map(&src, &tgt, &phi, &psi).unwrap();
        assert!(golod_test(&phi, N, DEFAULT_BUDGET).unwrap().verdict.is_golod());
        assert!(golod_test(&psi, N, DEFAULT_BUDGET).unwrap().verdict.is_golod());
        assert!(golod_test(&map, N, DEFAULT_BUDGET).unwrap().verdict.is_golod());
        // the series of the target as a module over the source
        let got =
            poincare_series(&FdModule::regular(tgt.algebra()).restrict(&map).unwrap(), N, DEFAULT_BUDGET).unwrap();
        let rel = |k: &AlgebraMorphism<PrimeField>| {
            poincare_series(&FdModule::regular(k.target()).restrict(k).unwrap(), N, DEFAULT_BUDGET).unwrap()
        };
        let want = evaluate_formula(
            FormulaId::FibprodMap,
            &inputs(vec![
                ("P_R_R'", rel(&phi).into()),
                ("P_S_S'", rel(&psi).into()),
                ("P_R_k", pk(&r).into()),
                ("P_S_k", pk(&s).into()),
            ]),
            N,
        )
        .unwrap();
        assert_eq!(got, want);
    }
}
