//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use thiserror::Error;

use crate::field::Field;
use crate::poly::{Monomial, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("quotient is not artinian: no power of `{0}` is a leading monomial")]
    NotArtinian(String),
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Poly<F>>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Remainder of `f` on division by `gens` (full reduction of every term).
pub fn reduce<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, gens: &[Poly<F>]) -> Poly<F> {
    let field = ring.field();
    let leads: Vec<(&Monomial, F::Elem)> = gens
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("nonzero divisor");
            (m, field.inv(c).expect("nonzero"))
        })
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = leads[k].0.quotient_of(&m);
                let coeff = field.mul(&c, &leads[k].1);
                p = ring.sub(&p, &ring.mul_term(&coeff, &q, &gens[k]));
            }
            None => {
                let t = ring.term(m, c);
                p = ring.sub(&p, &t);
                rem = ring.add(&rem, &t);
            }
        }
    }
    rem
}

fn s_poly<F: Field>(ring: &PolyRing<F>, f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let field = ring.field();
    let (mf, cf) = f.leading().unwrap();
    let (mg, cg) = g.leading().unwrap();
    let a = ring.mul_term(&field.inv(cf).unwrap(), &mf.quotient_of(lcm), f);
    let b = ring.mul_term(&field.inv(cg).unwrap(), &mg.quotient_of(lcm), g);
    ring.sub(&a, &b)
}

/// Gebauer–Möller update: add `h` (index `hi` in `basis`) to the pair set and
/// the active generator set.
fn update<F: Field>(ring: &PolyRing<F>, basis: &[Poly<F>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, hi: usize) {
    let w = ring.weights();
    let lh = basis[hi].leading_monomial().unwrap().clone();
    let lt = |i: usize| basis[i].leading_monomial().unwrap();

    let mut c: Vec<Pair> = active.iter().map(|&g| Pair { i: g, j: hi, lcm: lt(g).lcm(&lh, w) }).collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = lt(p.i).coprime(&lh);
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !lt(p.i).coprime(&lh)).collect();

    pairs.retain(|p| !(lh.divides(&p.lcm) && lt(p.i).lcm(&lh, w) != p.lcm && lt(p.j).lcm(&lh, w) != p.lcm));
    pairs.extend(e);

    active.retain(|&g| !lh.divides(lt(g)));
    active.push(hi);
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Self {
        let mut basis: Vec<Poly<F>> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in gens {
            let r = reduce(ring, g, &active.iter().map(|&i| basis[i].clone()).collect::<Vec<_>>());
            if r.is_zero() {
                continue;
            }
            basis.push(ring.monic(&r));
            update(ring, &basis, &mut active, &mut pairs, basis.len() - 1);
        }
        while !pairs.is_empty() {
            // normal selection strategy: smallest lcm first
            let k = (0..pairs.len()).min_by(|&a, &b| pairs[a].lcm.cmp(&pairs[b].lcm)).unwrap();
            let p = pairs.swap_remove(k);
            let s = s_poly(ring, &basis[p.i], &basis[p.j], &p.lcm);
            let current: Vec<Poly<F>> = active.iter().map(|&i| basis[i].clone()).collect();
            let r = reduce(ring, &s, &current);
            if r.is_zero() {
                continue;
            }
            basis.push(ring.monic(&r));
            update(ring, &basis, &mut active, &mut pairs, basis.len() - 1);
        }
        let minimal: Vec<Poly<F>> = active.iter().map(|&i| basis[i].clone()).collect();
        Self::interreduce(ring, minimal)
    }

    fn interreduce(ring: &PolyRing<F>, mut gens: Vec<Poly<F>>) -> Self {
        // drop generators whose leading monomial is divisible by another's
        gens.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        let mut kept: Vec<Poly<F>> = Vec::new();
        for g in gens {
            let lm = g.leading_monomial().unwrap();
            if !kept.iter().any(|k| k.leading_monomial().unwrap().divides(lm)) {
                kept.push(g);
            }
        }
        let mut reduced = Vec::with_capacity(kept.len());
        for i in 0..kept.len() {
            let others: Vec<Poly<F>> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let (lm, lc) = kept[i].leading().unwrap();
            let head = ring.term(lm.clone(), lc.clone());
            let tail = ring.sub(&kept[i], &head);
            let r = ring.add(&head, &reduce(ring, &tail, &others));
            reduced.push(ring.monic(&r));
        }
        GroebnerBasis { ring: ring.clone(), gens: reduced }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        reduce(&self.ring, f, &self.gens)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let w = self.ring.weights();
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let lcm = self.gens[i].leading_monomial().unwrap().lcm(self.gens[j].leading_monomial().unwrap(), w);
                let s = s_poly(&self.ring, &self.gens[i], &self.gens[j], &lcm);
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Monomials outside the leading ideal, sorted increasingly (so `1` comes first).
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let n = self.ring.nvars();
        let leads = self.leading_monomials();
        if self.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let mut bound = vec![u32::MAX; n];
        for m in &leads {
            if let Some(v) = m.pure_power_var() {
                bound[v] = bound[v].min(m.exps()[v]);
            }
        }
        if let Some(v) = bound.iter().position(|&b| b == u32::MAX) {
            return Err(GroebnerError::NotArtinian(self.ring.names()[v].clone()));
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        self.enumerate(0, &bound, &leads, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate(&self, i: usize, bound: &[u32], leads: &[Monomial], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            let m = self.ring.monomial(cur.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in 0..bound[i] {
            cur[i] = e;
            // prune: if the partial monomial is already in the leading ideal, larger exponents are too
            let partial = self.ring.monomial(cur.clone());
            if leads.iter().any(|l| l.divides(&partial)) {
                break;
            }
            self.enumerate(i + 1, bound, leads, cur, out);
        }
        cur[i] = 0;
    }
}

/// Equality of the ideals generated by `a` and `b`.
pub fn ideal_equal<F: Field>(ring: &PolyRing<F>, a: &[Poly<F>], b: &[Poly<F>]) -> bool {
    let ga = GroebnerBasis::compute(ring, a);
    let gb = GroebnerBasis::compute(ring, b);
    b.iter().all(|f| ga.contains(f)) && a.iter().all(|f| gb.contains(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(vars: &[(&str, u32)]) -> PolyRing<Rationals> {
        PolyRing::new(&Rationals, vars).unwrap()
    }

    fn polys(r: &PolyRing<Rationals>, src: &[&str]) -> Vec<Poly<Rationals>> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&[("x", 1)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x^3"]));
        assert_eq!(g.generators().len(), 1);
        assert_eq!(r.format(&g.generators()[0]), "x^3");
        let basis = g.standard_monomials().unwrap();
        let names: Vec<String> = basis.iter().map(|m| m.format(r.names())).collect();
        assert_eq!(names, vec!["1", "x", "x^2"]);
        assert!(g.contains(&r.parse("x^4").unwrap()));
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x^3", "x*y", "y^3"]));
        assert_eq!(g.generators().len(), 3);
        assert!(g.satisfies_criterion());
        assert_eq!(g.standard_monomials().unwrap().len(), 5);
    }

    #[test]
    fn hand_s_polynomial_gives_y_cubed() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x^2 - y^2", "x*y"]));
        assert!(g.satisfies_criterion());
        let y3 = r.parse("y^3").unwrap();
        assert!(g.generators().contains(&y3));
        let nf = g.normal_form(&r.parse("x^2").unwrap());
        assert_eq!(r.format(&nf), "y^2");
        assert_eq!(g.normal_form(&nf), nf);
        assert_eq!(g.standard_monomials().unwrap().len(), 4);
    }

    #[test]
    fn not_artinian() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x*y"]));
        assert!(matches!(g.standard_monomials(), Err(GroebnerError::NotArtinian(_))));
    }

    #[test]
    fn ideal_equality() {
        let r = ring(&[("x", 1)]);
        assert!(ideal_equal(&r, &polys(&r, &["x^2"]), &polys(&r, &["x^2 + x^3", "x^5"])));
        assert!(!ideal_equal(&r, &polys(&r, &["x"]), &polys(&r, &["x^2"])));
        let r = ring(&[("x", 1), ("y", 1)]);
        assert!(ideal_equal(&r, &polys(&r, &["x^2 - y^2", "x*y"]), &polys(&r, &["x^2 - y^2", "x*y", "y^3"])));
    }

    #[test]
    fn weighted_presentation() {
        let r = ring(&[("u", 1), ("v", 2)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["u^5", "u*v^2", "v^2 - u^2*v"]));
        let std = g.standard_monomials().unwrap();
        let mut hilbert = vec![0; 5];
        for m in &std {
            hilbert[m.degree() as usize] += 1;
        }
        assert_eq!(hilbert, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&[("x", 1)]);
        let g = GroebnerBasis::compute(&r, &polys(&r, &["x - 1", "x"]));
        assert!(g.is_unit_ideal());
        assert!(g.standard_monomials().unwrap().is_empty());
    }
}
