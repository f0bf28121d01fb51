use std::sync::Arc;

use super::*;
use crate::algebra::check_presentation_iso;
use crate::expr::Expr;
use crate::field::{PrimeField, Rationals};
use crate::poly::PolyRing;

fn alg<F: Field>(f: &F, vars: &[(&str, u32)], rels: &[&str]) -> Arc<FdAlgebra<F>> {
    Arc::new(FdAlgebra::parse(f, vars, rels).unwrap())
}

fn el<F: Field>(a: &FdAlgebra<F>, s: &str) -> Vector<F> {
    a.eval(&Expr::parse(s).unwrap()).unwrap()
}

fn map<F: Field>(src: &Arc<FdAlgebra<F>>, tgt: &Arc<FdAlgebra<F>>, images: &[&str]) -> AlgebraMorphism<F> {
    let imgs: Vec<_> = images.iter().map(|s| el(tgt, s)).collect();
    AlgebraMorphism::from_name_images(src, tgt, &imgs).unwrap()
}

fn iso<F: Field>(
    vars: &[(&str, u32)],
    rels: &[&str],
    target: &FdAlgebra<F>,
    images: &[Vector<F>],
) -> crate::algebra::IsoCheck {
    let ring = PolyRing::new(target.field(), vars).unwrap();
    let rels: Vec<_> = rels.iter().map(|r| ring.parse(r).unwrap()).collect();
    check_presentation_iso(&ring, &rels, target, images).unwrap()
}

/// `V = k` over `T = k`, mapped to `a` and `b`.
fn socle_diagram<F: Field>(
    r: &Arc<FdAlgebra<F>>,
    s: &Arc<FdAlgebra<F>>,
    a: &str,
    b: &str,
) -> Result<ConnectedSumDiagram<F>, SumsError> {
    let f = r.field();
    let t = alg(f, &[("z", 1)], &["z"]);
    let e_r = map(r, &t, &["0"]);
    let e_s = map(s, &t, &["0"]);
    let v = FdModule::residue_field(&t);
    let ir = Matrix::from_columns(f, r.dim(), &[el(r, a)]);
    let is = Matrix::from_columns(f, s.dim(), &[el(s, b)]);
    ConnectedSumDiagram::new(e_r, e_s, v, ir, is)
}

#[test]
fn pullback_along_identity() {
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1)], &["x^3"]);
    let s = alg(&f, &[("x", 1), ("y", 1)], &["x^3", "x*y", "y^2"]);
    let id = AlgebraMorphism::identity(&r);
    let e_s = map(&s, &r, &["x", "0"]);
    let fp = fiber_product(&id, &e_s).unwrap();
    assert_eq!(fp.algebra().dim(), s.dim());
    assert!(fp.sigma().is_isomorphism());
}

#[test]
fn fermat_fiber_product() {
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let s = alg(&Rationals, &[("y", 1)], &["y^3"]);
    let t = alg(&Rationals, &[("z", 1)], &["z"]);
    let fp = fiber_product(&map(&r, &t, &["0"]), &map(&s, &t, &["0"])).unwrap();
    let p = fp.algebra();
    assert_eq!(p.dim(), 5);
    assert_eq!(p.dim() + t.dim(), r.dim() + s.dim());
    p.audit().unwrap();
    let x = fp.element(&el(&r, "x"), &r.zero()).unwrap();
    let y = fp.element(&r.zero(), &el(&s, "y")).unwrap();
    assert!(iso(&[("x", 1), ("y", 1)], &["x^3", "x*y", "y^3"], p, &[x, y]).is_iso());
    assert!(fp.element(&el(&r, "x"), &s.zero()).is_some());
    assert!(fp.element(&r.unit(), &s.zero()).is_none());
}

#[test]
fn fermat_connected_sum() {
    // The displayed answer x^2 - y^2 needs the two socle generators to be
    // identified with opposite signs: killing (x^2, y^2) gives x^2 + y^2.
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let s = alg(&Rationals, &[("y", 1)], &["y^3"]);
    let d = socle_diagram(&r, &s, "x^2", "-y^2").unwrap();
    let res = connected_sum(&d).unwrap();
    let q = res.q();
    assert_eq!(q.length(), 4);
    assert_eq!(q.length() + d.t().length() + d.v().dim(), r.length() + s.length());
    assert!(q.is_gorenstein());
    let x = res.element(&el(&r, "x"), &s.zero()).unwrap();
    let y = res.element(&r.zero(), &el(&s, "y")).unwrap();
    assert!(iso(&[("x", 1), ("y", 1)], &["x^2 - y^2", "x*y"], q, &[x.clone(), y.clone()]).is_iso());

    let d = socle_diagram(&r, &s, "x^2", "y^2").unwrap();
    let res = connected_sum(&d).unwrap();
    let x = res.element(&el(&r, "x"), &s.zero()).unwrap();
    let y = res.element(&r.zero(), &el(&s, "y")).unwrap();
    assert!(matches!(
        iso(&[("x", 1), ("y", 1)], &["x^2 - y^2", "x*y"], res.q(), &[x.clone(), y.clone()]),
        crate::algebra::IsoCheck::RelationFails { index: 0, .. }
    ));
    assert!(iso(&[("x", 1), ("y", 1)], &["x^2 + y^2", "x*y"], res.q(), &[x, y]).is_iso());
}

#[test]
fn twisted_fermat_connected_sum() {
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let s = alg(&Rationals, &[("y", 1)], &["y^3"]);
    let d = socle_diagram(&r, &s, "2*x^2", "-y^2").unwrap();
    let res = connected_sum(&d).unwrap();
    let xp = res.element(&r.zero(), &el(&s, "y")).unwrap();
    let yp = res.element(&el(&r, "x"), &s.zero()).unwrap();
    assert!(iso(&[("x'", 1), ("y'", 1)], &["x'^2 - 2*y'^2", "x'*y'"], res.q(), &[xp, yp]).is_iso());
    assert!(res.q().is_gorenstein());
    assert_eq!(res.q().hilbert().unwrap(), vec![1, 2, 1]);
}

struct Example33<F: Field> {
    r: Arc<FdAlgebra<F>>,
    s: Arc<FdAlgebra<F>>,
    e_r: AlgebraMorphism<F>,
    e_s: AlgebraMorphism<F>,
}

fn example33<F: Field>(f: &F) -> Example33<F> {
    let r = alg(f, &[("x", 1)], &["x^5"]);
    let s = alg(f, &[("y", 1)], &["y^5"]);
    let t = alg(f, &[("z", 1)], &["z^2"]);
    let e_r = map(&r, &t, &["z"]);
    let e_s = map(&s, &t, &["z"]);
    Example33 { r, s, e_r, e_s }
}

fn check_example33<F: Field>(f: &F) {
    let Example33 { r, s, e_r, e_s } = example33(f);
    let fp = fiber_product(&e_r, &e_s).unwrap();
    let p = fp.algebra();
    assert_eq!(p.hilbert().unwrap(), vec![1, 1, 2, 2, 2]);
    let u = fp.element(&el(&r, "x"), &el(&s, "y")).unwrap();
    let v = fp.element(&r.zero(), &el(&s, "y^2")).unwrap();
    assert!(iso(&[("u", 1), ("v", 2)], &["u^5", "u*v^2", "v^2 - u^2*v"], p, &[u, v]).is_iso());

    // i_R(1) = x^3 and i_S(1) = -y^3; with equal signs u^3 would die instead
    let t = e_r.target().clone();
    let vmod = FdModule::regular(&t);
    let ir = Matrix::from_columns(f, 5, &[el(&r, "x^3"), el(&r, "x^4")]);
    let is = Matrix::from_columns(f, 5, &[el(&s, "-y^3"), el(&s, "-y^4")]);
    let d = ConnectedSumDiagram::new(e_r.clone(), e_s.clone(), vmod, ir, is).unwrap();
    let res = connected_sum(&d).unwrap();
    let q = res.q();
    assert_eq!(q.length(), 6);
    assert_eq!(q.hilbert().unwrap(), vec![1, 1, 2, 1, 1]);
    assert!(q.is_gorenstein());
    let u = res.element(&el(&r, "x"), &el(&s, "y")).unwrap();
    let v = res.element(&r.zero(), &el(&s, "y^2")).unwrap();
    assert!(iso(&[("u", 1), ("v", 2)], &["v^2 - u^2*v", "2*u*v - u^3"], q, &[u, v]).is_iso());

    let (gres, gd) = gorenstein_connected_sum(&e_r, &e_s, Grading::Auto).unwrap();
    assert!(gres.q().is_gorenstein());
    assert_eq!(gres.q().hilbert().unwrap(), vec![1, 1, 2, 1, 1]);
    assert_eq!(gd.v().dim(), 2);
}

#[test]
fn example33_over_rationals() {
    check_example33(&Rationals);
}

#[test]
fn example33_over_prime_field() {
    check_example33(&PrimeField::new(101).unwrap());
}

#[test]
fn gorenstein_sum_over_the_field() {
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1)], &["x^3"]);
    let s = alg(&f, &[("y", 1)], &["y^3"]);
    let t = alg(&f, &[("z", 1)], &["z"]);
    let (res, _) = gorenstein_connected_sum(&map(&r, &t, &["0"]), &map(&s, &t, &["0"]), Grading::Auto).unwrap();
    let q = res.q();
    assert!(q.is_gorenstein());
    assert_eq!(q.length(), 4);
    assert_eq!(q.hilbert().unwrap(), vec![1, 2, 1]);
}

#[test]
fn graded_gate_needs_equal_a_invariants() {
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1)], &["x^3"]);
    let s = alg(&f, &[("y", 1)], &["y^4"]);
    let t = alg(&f, &[("z", 1)], &["z"]);
    let (e_r, e_s) = (map(&r, &t, &["0"]), map(&s, &t, &["0"]));
    assert_eq!(
        gorenstein_connected_sum(&e_r, &e_s, Grading::Auto).unwrap_err(),
        SumsError::AInvariantMismatch { a_r: 2, a_s: 3 }
    );
    let (res, _) = gorenstein_connected_sum(&e_r, &e_s, Grading::Ungraded).unwrap();
    assert!(res.q().is_gorenstein());
    assert!(!res.q().is_graded());
    assert_eq!(res.q().length(), 5);
}

#[test]
fn rejects_non_gorenstein_inputs() {
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]);
    let s = alg(&f, &[("y", 1)], &["y^3"]);
    let t = alg(&f, &[("z", 1)], &["z"]);
    let err = gorenstein_connected_sum(&map(&r, &t, &["0", "0"]), &map(&s, &t, &["0"]), Grading::Auto).unwrap_err();
    assert_eq!(err, SumsError::NotGorensteinInput(Side::R));
}

#[test]
fn diagram_validation() {
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let s = alg(&Rationals, &[("y", 1)], &["y^3"]);
    // q -> q*x is not linear: x * x != 0 while x kills V = k
    assert_eq!(socle_diagram(&r, &s, "x", "y^2").unwrap_err(), SumsError::IotaNotModuleLinear(Side::R));
    assert_eq!(socle_diagram(&r, &s, "x^2", "0").unwrap_err(), SumsError::IotaNotInjective(Side::S));

    let r = alg(&Rationals, &[("x", 1)], &["x^2"]);
    let s = alg(&Rationals, &[("y", 1)], &["y^3"]);
    let t = alg(&Rationals, &[("z", 1)], &["z^2"]);
    let e_r = map(&r, &t, &["z"]);
    let e_s = map(&s, &t, &["z"]);
    let ir = Matrix::from_columns(&Rationals, 2, &[el(&r, "1"), el(&r, "x")]);
    let is = Matrix::from_columns(&Rationals, 3, &[el(&s, "y"), el(&s, "y^2")]);
    let err = ConnectedSumDiagram::new(e_r, e_s, FdModule::regular(&t), ir, is).unwrap_err();
    assert_eq!(err, SumsError::DiagramNotCommutative);
}

#[test]
fn zero_connected_sum_is_reported() {
    let t = alg(&Rationals, &[("z", 1)], &["z^2"]);
    let id = AlgebraMorphism::identity(&t);
    let eye = Matrix::identity(&Rationals, 2);
    let d = ConnectedSumDiagram::new(id.clone(), id, FdModule::regular(&t), eye.clone(), eye).unwrap();
    assert_eq!(connected_sum(&d).unwrap_err(), SumsError::ZeroConnectedSum);
}

#[test]
fn target_mismatch() {
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let t1 = alg(&Rationals, &[("z", 1)], &["z"]);
    let t2 = alg(&Rationals, &[("z", 1)], &["z^2"]);
    let e1 = map(&r, &t1, &["0"]);
    let e2 = map(&r, &t2, &["z"]);
    assert_eq!(fiber_product(&e1, &e2).unwrap_err(), SumsError::TargetMismatch);
}

#[test]
fn hilbert_identities_on_example33() {
    let Example33 { r, s, e_r, e_s } = example33(&Rationals);
    let fp = fiber_product(&e_r, &e_s).unwrap();
    let t = e_r.target();
    let (hr, hs, ht) = (r.hilbert().unwrap(), s.hilbert().unwrap(), t.hilbert().unwrap());
    let hp = fp.algebra().hilbert().unwrap();
    for i in 0..hp.len() {
        let g = |h: &Vec<u64>| h.get(i).copied().unwrap_or(0) as i64;
        assert_eq!(g(&hp), g(&hr) + g(&hs) - g(&ht));
    }
}

#[test]
fn duplication() {
    let r = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let zero = Subspace::zero(&Rationals, 3);
    assert_eq!(amalgamated_duplication(&r, &zero).unwrap().algebra().dim(), 3);

    let soc = r.socle();
    let d = amalgamated_duplication(&r, &soc).unwrap();
    let p = d.algebra();
    assert_eq!(p.dim(), 4);
    assert_eq!(p.dim(), 2 * r.dim() - (r.dim() - soc.dim()));
    // (x^2, 0) and (0, x^2) are both killed by (x, x)
    assert_eq!(p.type_(), 2);
    p.audit().unwrap();

    assert!(matches!(
        amalgamated_duplication(&r, &Subspace::full(&Rationals, 3)),
        Err(SumsError::Algebra(AlgebraError::UnitIdeal))
    ));
}

#[test]
fn split_socle_without_socle_generators() {
    let q = alg(&Rationals, &[("x", 1)], &["x^3"]);
    let sp = split_socle(&q, None).unwrap();
    assert_eq!(sp.b.dim(), 3);
    assert_eq!(sp.c.dim(), 1);
}

#[test]
fn split_socle_generator() {
    let q = alg(&Rationals, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^3"]);
    let sp = split_socle(&q, None).unwrap();
    assert_eq!(sp.b.dim(), 3);
    assert_eq!(sp.b.edim(), 1);
    assert_eq!(sp.c.dim(), 2);
    assert!(sp.c.max_ideal_power(2).dim() == 0);
    assert!(iso(&[("y", 1)], &["y^3"], &sp.b, &[sp.b.names()[1].1.clone()]).is_iso());
    assert!(sp.b.max_ideal_power(2).contains_subspace(&sp.b.socle()));
    assert!(sp.iso.is_isomorphism());
}

#[test]
fn split_square_zero() {
    let q = alg(&Rationals, &[("x", 1), ("y", 1)], &["x^2", "x*y", "y^2"]);
    let y = el(&q, "y");
    let sp = split_socle(&q, Some(&[y])).unwrap();
    assert_eq!((sp.b.dim(), sp.b.edim()), (2, 1));
    assert_eq!(sp.c.dim(), 2);
    // all of the socle: B = k and C = Q
    let sp = split_socle(&q, None).unwrap();
    assert_eq!((sp.b.dim(), sp.c.dim()), (1, 3));

    let x2 = el(&q, "x + 1");
    assert_eq!(split_socle(&q, Some(&[x2])).unwrap_err(), SumsError::WNotInSocleImage);
}

#[test]
fn type_inequalities_for_fiber_products() {
    let Example33 { r, s, e_r, e_s } = example33(&Rationals);
    let fp = fiber_product(&e_r, &e_s).unwrap();
    let t = e_r.target();
    let tp = fp.algebra().type_();
    let type_of_ideal = |a: &FdAlgebra<Rationals>, i: &Subspace<Rationals>| a.socle().intersection(i).dim();
    let lower =
        (r.type_() + s.type_() - t.type_()).max(type_of_ideal(&r, &e_r.kernel()) + type_of_ideal(&s, &e_s.kernel()));
    assert!(r.type_() + s.type_() >= tp);
    assert!(tp >= lower);
    assert!(tp >= 2);
}

#[test]
fn length_two_factor_gives_the_other_factor() {
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1)], &["x^2"]);
    let s = alg(&f, &[("y", 1), ("w", 1)], &["y^2 - w^2", "y*w"]);
    let t = alg(&f, &[("z", 1)], &["z"]);
    let (res, _) =
        gorenstein_connected_sum(&map(&r, &t, &["0"]), &map(&s, &t, &["0", "0"]), Grading::Ungraded).unwrap();
    let images: Vec<_> = ["y", "w"].iter().map(|v| res.element(&r.zero(), &el(&s, v)).unwrap()).collect();
    assert!(iso(&[("y", 1), ("w", 1)], &["y^2 - w^2", "y*w"], res.q(), &images).is_iso());
}

#[test]
fn field_factor_gives_quotient_of_the_other() {
    // R = k forces T = k; the sum is S / i_S(V)
    let f = PrimeField::new(101).unwrap();
    let r = alg(&f, &[("x", 1)], &["x"]);
    let s = alg(&f, &[("y", 1)], &["y^4"]);
    let t = alg(&f, &[("z", 1)], &["z"]);
    let e_r = map(&r, &t, &["0"]);
    let e_s = map(&s, &t, &["0"]);
    let v = FdModule::new(t.clone(), 0, None, vec![Matrix::zeros(&f, 0, 0)]).unwrap();
    let d = ConnectedSumDiagram::new(e_r, e_s, v, Matrix::zeros(&f, 1, 0), Matrix::zeros(&f, 4, 0)).unwrap();
    let res = connected_sum(&d).unwrap();
    assert_eq!(res.q().dim(), s.dim());
}
