use std::collections::HashMap;

use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::linalg::{Matrix, SparseVec};
use crate::poly::{Monomial, Poly, PolyRing};

use super::{AlgebraError, FdAlgebra, Vector};

/// A quotient `k[x]/I` together with its Gröbner basis and standard monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<F: Field> {
    relations: Vec<Poly<F>>,
    gb: GroebnerBasis<F>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> Presentation<F> {
    pub fn new(ring: &PolyRing<F>, relations: &[Poly<F>]) -> Result<Self, AlgebraError> {
        let gb = GroebnerBasis::compute(ring, relations);
        if gb.is_unit_ideal() {
            return Err(AlgebraError::ZeroRing);
        }
        let monomials = gb.standard_monomials()?;
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Presentation { relations: relations.to_vec(), gb, monomials, index })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        self.gb.ring()
    }
    pub fn gb(&self) -> &GroebnerBasis<F> {
        &self.gb
    }
    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gb.generators().iter().all(|g| g.is_homogeneous())
    }

    /// Coordinates of the class of `p` on the standard monomials.
    pub fn coordinates(&self, p: &Poly<F>) -> Vector<F> {
        let f = self.ring().field();
        let nf = self.gb.normal_form(p);
        let mut v = vec![f.zero(); self.monomials.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// The polynomial `sum v_i m_i`.
    pub fn lift(&self, v: &[F::Elem]) -> Poly<F> {
        let ring = self.ring();
        let mut p = Poly::zero();
        for (m, c) in self.monomials.iter().zip(v) {
            p = ring.add(&p, &ring.term(m.clone(), c.clone()));
        }
        p
    }
}

impl<F: Field> FdAlgebra<F> {
    /// `k[x]/(relations)` on its standard monomial basis. Graded when every
    /// Gröbner basis element is homogeneous for the variable weights.
    pub fn from_presentation(ring: &PolyRing<F>, relations: &[Poly<F>]) -> Result<Self, AlgebraError> {
        let pres = Presentation::new(ring, relations)?;
        let f = ring.field();
        let n = pres.monomials.len();
        let mut table: Vec<SparseVec<F::Elem>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                let prod = pres.monomials[i].mul(&pres.monomials[j]);
                let v = match pres.index.get(&prod) {
                    Some(&k) => vec![(k, f.one())],
                    None => {
                        let c = pres.coordinates(&ring.term(prod, f.one()));
                        c.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect()
                    }
                };
                table[j * n + i] = v.clone();
                table[i * n + j] = v;
            }
        }
        let labels = pres.monomials.iter().map(|m| m.format(ring.names())).collect();
        let degrees =
            if pres.is_homogeneous() { Some(pres.monomials.iter().map(|m| m.degree()).collect()) } else { None };
        let names = (0..ring.nvars()).map(|i| (ring.names()[i].clone(), pres.coordinates(&ring.var(i)))).collect();
        let mut alg = FdAlgebra::from_table(f, labels, degrees, table)?.with_names(names);
        alg.set_presentation(pres);
        Ok(alg)
    }

    /// Convenience wrapper parsing variables `(name, weight)` and relation strings.
    pub fn parse(field: &F, vars: &[(&str, u32)], relations: &[&str]) -> Result<Self, AlgebraError> {
        let ring = PolyRing::new(field, vars)?;
        let rels = relations.iter().map(|r| ring.parse(r)).collect::<Result<Vec<_>, _>>()?;
        Self::from_presentation(&ring, &rels)
    }

    /// Value of `p` with variable `i` replaced by `images[i]`.
    pub fn eval_poly(&self, p: &Poly<F>, images: &[Vector<F>]) -> Vector<F> {
        let mut powers: Vec<Vec<Vector<F>>> = images.iter().map(|x| vec![self.unit(), x.clone()]).collect();
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let mut t = self.scale(c, &self.unit());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = self.mul(powers[v].last().unwrap(), &images[v]);
                    powers[v].push(next);
                }
                t = self.mul(&t, &powers[v][e as usize]);
            }
            out = self.add(&out, &t);
        }
        out
    }
}

/// Outcome of comparing a claimed presentation with an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCheck {
    Isomorphism,
    /// A claimed relation does not vanish on the images.
    RelationFails {
        index: usize,
        relation: String,
    },
    DimensionMismatch {
        claimed: usize,
        target: usize,
    },
    /// Images of the standard monomials are linearly dependent.
    NotBijective {
        rank: usize,
    },
    /// The image of a variable is not homogeneous of the variable's weight.
    NotGraded {
        variable: String,
    },
}

impl IsoCheck {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoCheck::Isomorphism)
    }
}

/// Decides whether `x_i -> images[i]` induces an isomorphism
/// `ring/(relations) -> target`.
pub fn check_presentation_iso<F: Field>(
    ring: &PolyRing<F>,
    relations: &[Poly<F>],
    target: &FdAlgebra<F>,
    images: &[Vector<F>],
) -> Result<IsoCheck, AlgebraError> {
    if images.len() != ring.nvars() {
        return Err(AlgebraError::DimensionMismatch { expected: ring.nvars(), found: images.len() });
    }
    for (i, r) in relations.iter().enumerate() {
        if !target.is_zero_elem(&target.eval_poly(r, images)) {
            return Ok(IsoCheck::RelationFails { index: i, relation: ring.format(r) });
        }
    }
    let pres = Presentation::new(ring, relations)?;
    let n = pres.monomials().len();
    if n != target.dim() {
        return Ok(IsoCheck::DimensionMismatch { claimed: n, target: target.dim() });
    }
    let f = ring.field();
    let cols: Vec<Vector<F>> =
        pres.monomials().iter().map(|m| target.eval_poly(&ring.term(m.clone(), f.one()), images)).collect();
    let rank = Matrix::from_columns(f, target.dim(), &cols).rank();
    if rank != n {
        return Ok(IsoCheck::NotBijective { rank });
    }
    if target.is_graded() && pres.is_homogeneous() {
        for (i, img) in images.iter().enumerate() {
            let ok = target.is_zero_elem(img) || target.homogeneous_degree(img) == Some(ring.weights()[i]);
            if !ok {
                return Ok(IsoCheck::NotGraded { variable: ring.names()[i].clone() });
            }
        }
    }
    Ok(IsoCheck::Isomorphism)
}
