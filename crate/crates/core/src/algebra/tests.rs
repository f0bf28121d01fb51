use std::sync::Arc;

use super::*;
use crate::field::{PrimeField, Rationals};
use crate::poly::PolyRing;

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

#[test]
fn truncated_polynomial_ring() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^3"]).unwrap();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.labels(), &["1", "x", "x^2"]);
    let x = a.basis_vector(1);
    let x2 = a.basis_vector(2);
    assert!(a.is_zero_elem(&a.mul(&x, &x2)));
    a.audit().unwrap();
}

#[test]
fn weighted_presentation_hilbert() {
    let a = FdAlgebra::parse(&gf101(), &[("u", 1), ("v", 2)], &["u^5", "u*v^2", "v^2 - u^2*v"]).unwrap();
    assert_eq!(a.dim(), 8);
    assert_eq!(a.hilbert().unwrap(), vec![1, 1, 2, 2, 2]);
    a.audit().unwrap();
}

#[test]
fn field_as_algebra() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x"]).unwrap();
    assert_eq!(a.dim(), 1);
    assert_eq!(a.edim(), 0);
    assert!(a.is_gorenstein());
}

#[test]
fn invariants_of_fermat_sum() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1), ("y", 1)], &["x^2 - y^2", "x*y"]).unwrap();
    let inv = a.invariants();
    assert_eq!(inv.length, 4);
    assert_eq!(inv.edim, 2);
    assert_eq!(inv.socle_dim, 1);
    assert!(inv.is_gorenstein);
    assert_eq!(inv.a_invariant, Some(2));
    let soc = a.socle();
    let x = a.names()[0].1.clone();
    assert!(soc.contains(&a.mul(&x, &x)));
}

#[test]
fn square_zero_is_not_gorenstein() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]).unwrap();
    assert_eq!(a.length(), 3);
    assert_eq!(a.type_(), 2);
    assert!(!a.is_gorenstein());
}

#[test]
fn truncated_x5() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^5"]).unwrap();
    assert_eq!((a.length(), a.type_(), a.a_invariant()), (5, 1, Some(4)));
}

#[test]
fn annihilators() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^5"]).unwrap();
    let x = a.names()[0].1.clone();
    // (0 : m) is the socle
    assert_eq!(a.annihilator(std::slice::from_ref(&x)), a.socle());
    let ann = a.annihilator(std::slice::from_ref(&x));
    assert_eq!(ann.dim(), 1);
    assert!(ann.contains(&a.pow(&x, 4)));
    // I = (x^2): (0 : I) = (x^3)
    let ann2 = a.annihilator(&[a.pow(&x, 2)]);
    assert_eq!(ann2.dim(), 2);
    assert_eq!(ann2, a.ideal(&[a.pow(&x, 3)]));
}

#[test]
fn socle_from_generators_matches_full_socle() {
    for rels in [&["x^3", "x*y", "y^3"][..], &["x^2 - y^2", "x*y"], &["x^2", "y^2"], &["x^4", "x^2*y", "y^2"]] {
        let a = FdAlgebra::parse(&gf101(), &[("x", 1), ("y", 1)], rels).unwrap();
        assert_eq!(a.socle(), a.socle_from_all());
    }
}

#[test]
fn quotients() {
    let a = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^5"]).unwrap());
    let (q, pi) = FdAlgebra::quotient(&a, &Subspace::zero(&Rationals, 5)).unwrap();
    assert_eq!(q.dim(), 5);
    assert!(pi.is_isomorphism());
    let (q, pi) = FdAlgebra::quotient(&a, &a.socle()).unwrap();
    assert_eq!(q.dim(), 4);
    assert!(pi.is_surjective());
    let b = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^4"]).unwrap();
    let iso = check_presentation_iso(
        b.presentation().unwrap().ring(),
        b.presentation().unwrap().relations(),
        &q,
        &[q.names()[0].1.clone()],
    )
    .unwrap();
    assert!(iso.is_iso());
    assert_eq!(FdAlgebra::quotient(&a, &Subspace::full(&Rationals, 5)).unwrap_err(), AlgebraError::UnitIdeal);
}

#[test]
fn quotient_by_diagonal_socle_class() {
    let a = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1), ("y", 1)], &["x^3", "x*y", "y^3"]).unwrap());
    let diag = a.eval(&crate::expr::Expr::parse("x^2 - y^2").unwrap()).unwrap();
    let (q, _) = FdAlgebra::quotient(&a, &a.ideal(&[diag])).unwrap();
    assert_eq!(q.dim(), 4);
    let ring = PolyRing::new(&Rationals, &[("x", 1), ("y", 1)]).unwrap();
    let rels = vec![ring.parse("x^2 - y^2").unwrap(), ring.parse("x*y").unwrap()];
    let imgs: Vec<_> = q.names().iter().map(|(_, v)| v.clone()).collect();
    assert!(check_presentation_iso(&ring, &rels, &q, &imgs).unwrap().is_iso());
}

#[test]
fn dual_module() {
    let k = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x"]).unwrap());
    assert_eq!(FdModule::regular(&k).dual(0).dim(), 1);

    let t = Arc::new(FdAlgebra::parse(&Rationals, &[("z", 1)], &["z^2"]).unwrap());
    let e = FdModule::regular(&t).dual(0);
    e.validate().unwrap();
    assert_eq!(e.num_generators(), 1);

    let a = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]).unwrap());
    let e = FdModule::regular(&a).dual(0);
    e.validate().unwrap();
    assert_eq!(e.dim(), 3);
    assert_eq!(e.num_generators(), 2);
    assert_eq!(e.socle().dim(), 1);
    // brute force: Hom_A(k, E) is one-dimensional, as for any injective hull
    assert_eq!(hom_space(&FdModule::residue_field(&a), &e).len(), 1);
}

#[test]
fn double_dual_is_conjugate_to_identity() {
    let a = Arc::new(FdAlgebra::parse(&gf101(), &[("x", 1), ("y", 1)], &["x^3", "x*y", "y^2"]).unwrap());
    let m = FdModule::regular(&a);
    let dd = m.dual(0).dual(0);
    assert_eq!(dd.actions(), m.actions());
}

#[test]
fn gorenstein_iff_dual_cyclic() {
    for rels in [&["x^3", "x*y", "y^3"][..], &["x^2 - y^2", "x*y"], &["x^2", "y^2"], &["x^2", "x*y", "y^2"]] {
        let a = Arc::new(FdAlgebra::parse(&gf101(), &[("x", 1), ("y", 1)], rels).unwrap());
        let e = FdModule::regular(&a).dual(0);
        assert_eq!(a.is_gorenstein(), e.num_generators() == 1);
    }
}

#[test]
fn trivial_extensions() {
    let k = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x"]).unwrap());
    let kk = k.trivial_extension(&FdModule::residue_field(&k).shifted(1)).unwrap();
    assert_eq!(kk.dim(), 2);
    assert!(kk.is_gorenstein());
    assert_eq!(kk.hilbert().unwrap(), vec![1, 1]);

    let q = Arc::new(FdAlgebra::parse(&gf101(), &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^3"]).unwrap());
    let a = q.a_invariant().unwrap() as i32;
    let e = FdModule::regular(&q).dual(a + 1);
    let t = q.trivial_extension(&e).unwrap();
    assert_eq!(t.length(), 2 * q.length());
    assert!(t.is_gorenstein());
    assert!(t.is_graded());
    t.audit().unwrap();
}

#[test]
fn presentation_checks_report_failures_distinctly() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^3"]).unwrap();
    let ring = PolyRing::new(&Rationals, &[("t", 1)]).unwrap();
    let x = a.names()[0].1.clone();
    let r = check_presentation_iso(&ring, &[ring.parse("t^2").unwrap()], &a, std::slice::from_ref(&x)).unwrap();
    assert!(matches!(r, IsoCheck::RelationFails { .. }));
    let r = check_presentation_iso(&ring, &[ring.parse("t^4").unwrap()], &a, std::slice::from_ref(&x)).unwrap();
    assert_eq!(r, IsoCheck::DimensionMismatch { claimed: 4, target: 3 });
    let r = check_presentation_iso(&ring, &[ring.parse("t^3").unwrap()], &a, &[x]).unwrap();
    assert!(r.is_iso());
}

#[test]
fn inhomogeneous_relations_give_filtered_algebras() {
    let a = FdAlgebra::parse(&Rationals, &[("x", 1), ("y", 1)], &["x^2 - y^3", "x*y"]).unwrap();
    assert!(!a.is_graded());
    assert!(a.hilbert().is_none());
    a.audit().unwrap();
    assert!(a.is_gorenstein());
    assert_eq!(a.dim(), 5);
    // not local at the origin
    assert!(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^2 - x"]).is_err());
}
