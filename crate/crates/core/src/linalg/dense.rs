use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { data: vec![field.zero(); rows * cols], field: field.clone(), rows, cols }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_field(&self, other: &F) -> Result<(), LinAlgError> {
        if &self.field != other {
            return Err(LinAlgError::FieldMismatch { left: self.field.name(), right: other.name() });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, LinAlgError> {
        self.check_field(&other.field)?;
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Panics on dimension mismatch; use [`Matrix::try_mul`] for checked use.
    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        self.try_mul(other).expect("matrix product dimensions")
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimensions");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        let rs: Vec<Vec<F::Elem>> = rows.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(&self.field, self.cols, &rs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub_mul(m.get(i, j), &factor, pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Matrix whose columns form a basis of the kernel.
    pub fn nullspace(&self) -> Matrix<F> {
        let f = &self.field;
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(r.get(i, fc)));
            }
        }
        basis
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let f = &self.field;
        let bm = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let Rref { matrix: r, pivots } = self.hstack(&bm).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<F>) -> Result<Option<Matrix<F>>, LinAlgError> {
        if b.rows != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.rows });
        }
        let f = &self.field;
        let Rref { matrix: r, pivots } = self.hstack(b).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        let Rref { matrix: r, pivots } = self.hstack(&id).rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] != self.rows - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            &self.field,
            self.rows,
            &(0..self.rows).map(|i| r.row(i)[self.cols..].to_vec()).collect::<Vec<_>>(),
        ))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let f = Rationals;
        let id = Matrix::identity(&f, 3);
        let b = q(&[4, -2, 7]);
        assert_eq!(id.solve(&b).unwrap(), Some(b));
    }

    #[test]
    fn scalar_solve_over_q() {
        let f = Rationals;
        let a = Matrix::from_rows(&f, 1, &[q(&[2])]);
        assert_eq!(a.solve(&q(&[1])).unwrap(), Some(vec![f.from_ratio(1, 2).unwrap()]));
    }

    #[test]
    fn inconsistent_system() {
        let f = Rationals;
        let a = Matrix::from_rows(&f, 2, &[q(&[1, 1]), q(&[1, 1])]);
        assert_eq!(a.solve(&q(&[1, 2])).unwrap(), None);
        assert!(matches!(a.solve(&q(&[1])), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn random_invertible_gf101_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tried = 0;
        loop {
            let rows: Vec<Vec<u64>> = (0..6).map(|_| (0..6).map(|_| rng.gen_range(0..101)).collect()).collect();
            let a = Matrix::from_rows(&f, 6, &rows);
            tried += 1;
            if !a.is_invertible() {
                continue;
            }
            let b: Vec<u64> = (0..6).map(|_| rng.gen_range(0..101)).collect();
            let x = a.solve(&b).unwrap().unwrap();
            assert_eq!(a.mul_vec(&x), b);
            let inv = a.inverse().unwrap();
            assert_eq!(a.mul(&inv), Matrix::identity(&f, 6));
            break;
        }
        assert!(tried < 10);
    }

    #[test]
    fn nullspace_examples() {
        let f = Rationals;
        let z = Matrix::zeros(&f, 3, 3);
        assert_eq!(z.nullspace().cols(), 3);
        let id = Matrix::identity(&f, 4);
        assert_eq!(id.nullspace().cols(), 0);
        let a = Matrix::from_rows(&f, 2, &[q(&[1, 1])]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 1);
        let v = n.column(0);
        // spanned by (1, -1) up to scaling
        assert_eq!(f.add(&v[0], &v[1]), f.zero());
        assert!(!f.is_zero(&v[0]));
    }

    #[test]
    fn rank_nullity() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let rows: Vec<Vec<u64>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..101) } else { 0 }).collect())
                .collect();
            let a = Matrix::from_rows(&f, c, &rows);
            let n = a.nullspace();
            assert_eq!(a.rank() + n.cols(), c);
            assert!(a.mul(&n).is_zero());
            assert_eq!(n.rank(), n.cols());
        }
    }
}
