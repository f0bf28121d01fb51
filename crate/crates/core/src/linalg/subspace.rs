use crate::field::Field;

use super::dense::Matrix;

/// A linear subspace of `F^n`, stored as a reduced row echelon basis.
///
/// Because the basis is reduced, the coordinates of a member `v` are simply
/// its entries at the pivot columns.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Self::from_rref(field, ambient, &id)
    }

    pub fn span(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors);
        Self::from_rref(field, ambient, &m)
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::span(m.field(), m.rows(), &m.columns())
    }

    /// Kernel of `m` as a subspace of its source.
    pub fn kernel(m: &Matrix<F>) -> Self {
        Self::column_space(&m.nullspace())
    }

    fn from_rref(field: &F, ambient: usize, m: &Matrix<F>) -> Self {
        let r = m.rref();
        let basis = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { field: field.clone(), ambient, basis, pivots: r.pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient coordinates not used as pivots; the standard basis vectors at
    /// these positions span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// `v` minus its projection along the pivot coordinates; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *o = f.sub_mul(o, &c, r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }

    /// Coordinates with respect to [`Subspace::basis`].
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(&self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(f, self.ambient);
        }
        // columns [A | -B]; kernel vectors (a, b) give A a = B b
        let mut cols: Vec<Vec<F::Elem>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|e| f.neg(e)).collect()));
        let m = Matrix::from_columns(f, self.ambient, &cols);
        let n = m.nullspace();
        let mut vecs = Vec::new();
        for k in 0..n.cols() {
            let coeffs = n.column(k);
            let mut v = vec![f.zero(); self.ambient];
            for (c, b) in coeffs.iter().zip(&self.basis) {
                if f.is_zero(c) {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = f.add(vi, &f.mul(c, bi));
                }
            }
            vecs.push(v);
        }
        Self::span(f, self.ambient, &vecs)
    }

    /// Matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(&self.field, self.ambient, &self.basis)
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.basis == other.basis
    }
}
