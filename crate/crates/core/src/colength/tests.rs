use std::sync::Arc;

use super::*;
use crate::field::{PrimeField, Rationals};
use crate::sums::fiber_product;

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn alg<F: Field>(f: &F, vars: &[&str], rels: &[&str]) -> Arc<FdAlgebra<F>> {
    let v: Vec<(&str, u32)> = vars.iter().map(|x| (*x, 1)).collect();
    Arc::new(FdAlgebra::parse(f, &v, rels).unwrap())
}

fn over_k<F: Field>(r: &Arc<FdAlgebra<F>>, s: &Arc<FdAlgebra<F>>) -> FiberProduct<F> {
    let k = Arc::new(FdAlgebra::ground(r.field()));
    fiber_product(&AlgebraMorphism::augmentation(r, &k).unwrap(), &AlgebraMorphism::augmentation(s, &k).unwrap())
        .unwrap()
}

#[test]
fn gorenstein_has_colength_zero() {
    let q = alg(&Rationals, &["x", "y"], &["x^2", "y^2"]);
    let r = gcl_bounds(&q, &[]).unwrap();
    assert_eq!((r.lower, r.upper), (0, 0));
    assert!(r.teter.is_none());
}

#[test]
fn square_zero_has_colength_one() {
    let q = alg(&Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let r = gcl_bounds(&q, &[]).unwrap();
    assert_eq!((r.lower, r.upper), (1, 1));
    assert_eq!(r.upper_source, UpperSource::Teter);
    let a = r.witness.algebra();
    assert_eq!(a.length(), 4);
    assert!(a.is_gorenstein());
    // A / soc A ≅ Q through the witness map
    assert_eq!(r.witness.map().kernel(), a.socle());
}

#[test]
fn supplied_cover_is_verified() {
    let q = alg(&Rationals, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let a = alg(&Rationals, &["x", "y"], &["x^2", "y^2"]);
    let names: Vec<Vector<Rationals>> = q.names().iter().map(|(_, v)| v.clone()).collect();
    let good = AlgebraMorphism::from_generator_images(&a, &q, &a.min_generators(), &names).unwrap();
    let r = gcl_bounds(&q, &[good]).unwrap();
    assert_eq!(r.upper, 1);
    // a non-Gorenstein source is rejected
    let bad = AlgebraMorphism::identity(&q);
    assert!(matches!(gcl_bounds(&q, &[bad]), Err(ColengthError::WitnessInvalid { index: 0, .. })));
}

#[test]
fn trivial_extension_doubles_length() {
    for rels in [&["x^2", "x*y", "y^2"][..], &["x^3", "x*y", "y^2"], &["x^2", "y^2"]] {
        let q = alg(&gf101(), &["x", "y"], rels);
        let c = trivial_extension_cover(&q).unwrap();
        assert_eq!(c.gap(), q.length());
        assert!(c.algebra().is_gorenstein());
    }
}

#[test]
fn lemma_lower_bound_from_quotients() {
    // k[x,y,z]/(x,y,z)^2: edim 3, largest Gorenstein quotient has length 2
    let q = alg(&gf101(), &["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]);
    assert_eq!(largest_gorenstein_quotient(&q, QUOTIENT_BUDGET), 2);
    let r = gcl_bounds(&q, &[]).unwrap();
    assert_eq!((r.lower, r.upper), (1, 1));
}

#[test]
fn fiber_product_of_two_lines() {
    let r = alg(&Rationals, &["x"], &["x^2"]);
    let s = alg(&Rationals, &["y"], &["y^2"]);
    let fp = over_k(&r, &s);
    let rep = gcl_bounds_fiber_product(&fp).unwrap();
    assert_eq!(rep.fiber_product, Some(FiberProductBounds { lower: 1, upper: Some(1) }));
    assert_eq!((rep.lower, rep.upper), (1, 1));
}

#[test]
fn fiber_product_lower_bound_can_exceed_one() {
    let r = alg(&gf101(), &["x", "y"], &["x^2", "y^2"]);
    let s = alg(&gf101(), &["z"], &["z^2"]);
    let fp = over_k(&r, &s);
    let rep = gcl_bounds_fiber_product(&fp).unwrap();
    assert_eq!(rep.lower, 2);
    assert_eq!(rep.fiber_product.as_ref().unwrap().lower, 2);
    assert!(rep.teter.is_none());
    assert!(!hv_epi_search(fp.algebra(), 64).unwrap().is_found());
}

#[test]
fn fiber_product_with_non_gorenstein_factor() {
    let r = alg(&gf101(), &["x", "y"], &["x^2", "x*y", "y^2"]);
    let s = alg(&gf101(), &["z"], &["z^3"]);
    let fp = over_k(&r, &s);
    let rep = gcl_bounds_fiber_product(&fp).unwrap();
    assert_eq!(rep.fiber_product, Some(FiberProductBounds { lower: 1, upper: Some(1) }));
}

#[test]
fn teter_on_small_cases() {
    let k = alg(&Rationals, &["x"], &["x"]);
    let w = teter_test(&k).unwrap().unwrap();
    assert_eq!(w.cover.gap(), 1);

    let line = alg(&Rationals, &["x"], &["x^3"]);
    let w = teter_test(&line).unwrap().unwrap();
    assert_eq!(w.cover.algebra().hilbert().unwrap(), vec![1, 1, 1, 1]);

    let two = PrimeField::new(2).unwrap();
    let q = alg(&two, &["x"], &["x^2"]);
    assert_eq!(teter_test(&q).unwrap_err(), ColengthError::CharTwo);
    assert_eq!(hv_epi_search(&q, 4).unwrap_err(), ColengthError::CharTwo);
}

#[test]
fn epimorphisms_onto_the_maximal_ideal() {
    let line = alg(&gf101(), &["x"], &["x^4"]);
    assert!(hv_epi_search(&line, 16).unwrap().is_found());
    let sq = alg(&gf101(), &["x", "y"], &["x^2", "x*y", "y^2"]);
    assert!(hv_epi_search(&sq, 16).unwrap().is_found());
    let gor = alg(&gf101(), &["x", "y"], &["x^2", "y^2"]);
    assert!(!hv_epi_search(&gor, 16).unwrap().is_found());
}

#[test]
fn extending_covers_increases_the_gap() {
    let q = alg(&gf101(), &["x", "y"], &["x^2", "x*y", "y^2"]);
    let base = gcl_bounds(&q, &[]).unwrap().witness;
    for n in 0..=3 {
        let c = extend_cover(&base, n).unwrap();
        assert_eq!(c.gap(), 1 + n);
        assert!(c.algebra().is_gorenstein());
    }
    let line = alg(&gf101(), &["x"], &["x^3"]);
    let c = extend_cover(&identity_cover(&line), 2).unwrap();
    assert_eq!(c.gap(), 2);
    let gor = alg(&gf101(), &["x", "y"], &["x^2", "y^2"]);
    assert_eq!(extend_cover(&identity_cover(&gor), 1).unwrap_err(), ColengthError::ZeroGap);
}
