use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

use super::{AlgebraError, FdAlgebra, Vector};

/// A unital ring homomorphism between finite-dimensional algebras, stored as
/// the matrix of its underlying linear map (`target.dim() x source.dim()`).
#[derive(Clone)]
pub struct AlgebraMorphism<F: Field> {
    source: Arc<FdAlgebra<F>>,
    target: Arc<FdAlgebra<F>>,
    matrix: Matrix<F>,
}

impl<F: Field> fmt::Debug for AlgebraMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraMorphism({} -> {}, rank {})", self.source.dim(), self.target.dim(), self.rank())
    }
}

impl<F: Field> AlgebraMorphism<F> {
    /// Validates unitality, multiplicativity and, when both sides are
    /// graded, that degrees are preserved.
    pub fn new(source: Arc<FdAlgebra<F>>, target: Arc<FdAlgebra<F>>, matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        let m = Self::new_ungraded(source, target, matrix)?;
        if let (Some(ds), Some(_)) = (m.source.degrees(), m.target.degrees()) {
            for (j, &d) in ds.iter().enumerate() {
                let img = m.matrix.column(j);
                if !m.target.is_zero_elem(&img) && m.target.homogeneous_degree(&img) != Some(d) {
                    return Err(AlgebraError::NotGradedMap(j));
                }
            }
        }
        Ok(m)
    }

    /// Like [`AlgebraMorphism::new`] without the degree check.
    pub fn new_ungraded(
        source: Arc<FdAlgebra<F>>,
        target: Arc<FdAlgebra<F>>,
        matrix: Matrix<F>,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        let m = AlgebraMorphism { source, target, matrix };
        if m.matrix.column(0) != m.target.unit() {
            return Err(AlgebraError::NotUnital);
        }
        let n = m.source.dim();
        let images: Vec<Vector<F>> = (0..n).map(|j| m.matrix.column(j)).collect();
        for i in 1..n {
            for j in i..n {
                let lhs = m.apply(&m.source.basis_product(i, j));
                let rhs = m.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(AlgebraError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<FdAlgebra<F>>,
        target: Arc<FdAlgebra<F>>,
        matrix: Matrix<F>,
    ) -> Self {
        AlgebraMorphism { source, target, matrix }
    }

    pub fn identity(a: &Arc<FdAlgebra<F>>) -> Self {
        AlgebraMorphism { source: a.clone(), target: a.clone(), matrix: Matrix::identity(a.field(), a.dim()) }
    }

    /// The augmentation `a -> k`, with `k` a one-dimensional algebra.
    pub fn augmentation(a: &Arc<FdAlgebra<F>>, k: &Arc<FdAlgebra<F>>) -> Result<Self, AlgebraError> {
        let f = a.field();
        let mut m = Matrix::zeros(f, 1, a.dim());
        m.set(0, 0, f.one());
        Self::new_ungraded(a.clone(), k.clone(), m)
    }

    /// The map determined by the images of the named elements of `source`
    /// (for presented algebras: the variables).
    pub fn from_name_images(
        source: &Arc<FdAlgebra<F>>,
        target: &Arc<FdAlgebra<F>>,
        images: &[Vector<F>],
    ) -> Result<Self, AlgebraError> {
        let gens: Vec<Vector<F>> = source.names().iter().map(|(_, v)| v.clone()).collect();
        if gens.len() != images.len() {
            return Err(AlgebraError::DimensionMismatch { expected: gens.len(), found: images.len() });
        }
        Self::from_generator_images(source, target, &gens, images)
    }

    /// The map sending `gens[i]` to `images[i]`. Fails if the generators do not
    /// generate the source or the assignment does not extend to a homomorphism.
    pub fn from_generator_images(
        source: &Arc<FdAlgebra<F>>,
        target: &Arc<FdAlgebra<F>>,
        gens: &[Vector<F>],
        images: &[Vector<F>],
    ) -> Result<Self, AlgebraError> {
        let f = source.field();
        let n = source.dim();
        // grow spanning words breadth-first, recording the image of each word
        let mut words: Vec<(Vector<F>, Vector<F>)> = vec![(source.unit(), target.unit())];
        let mut span = Subspace::span(f, n, &[source.unit()]);
        let mut frontier = 0;
        while frontier < words.len() && span.dim() < n {
            let (w, iw) = words[frontier].clone();
            frontier += 1;
            for (g, ig) in gens.iter().zip(images) {
                let next = source.mul(&w, g);
                if span.contains(&next) {
                    continue;
                }
                span = span.sum(&Subspace::span(f, n, std::slice::from_ref(&next)));
                words.push((next, target.mul(&iw, ig)));
            }
        }
        if span.dim() < n {
            return Err(AlgebraError::NotGenerating);
        }
        let s = Matrix::from_columns(f, n, &words.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>());
        let t = Matrix::from_columns(f, target.dim(), &words.iter().map(|(_, w)| w.clone()).collect::<Vec<_>>());
        let inv = s.inverse().ok_or(AlgebraError::NotGenerating)?;
        let m = Self::new_ungraded(source.clone(), target.clone(), t.mul(&inv))?;
        for (g, ig) in gens.iter().zip(images) {
            if &m.apply(g) != ig {
                return Err(AlgebraError::NotMultiplicative(0, 0));
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &Arc<FdAlgebra<F>> {
        &self.source
    }
    pub fn target(&self) -> &Arc<FdAlgebra<F>> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vector<F> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMorphism<F>) -> Result<AlgebraMorphism<F>, AlgebraError> {
        if first.target.dim() != self.source.dim() {
            return Err(AlgebraError::Mismatch);
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel(&self) -> Subspace<F> {
        Subspace::kernel(&self.matrix)
    }

    pub fn image(&self) -> Subspace<F> {
        Subspace::column_space(&self.matrix)
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<AlgebraMorphism<F>> {
        let inv = self.matrix.inverse()?;
        Some(AlgebraMorphism { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }

    /// Degree-preserving when both sides are graded.
    pub fn is_graded(&self) -> bool {
        match (self.source.degrees(), self.target.degrees()) {
            (Some(ds), Some(_)) => ds.iter().enumerate().all(|(j, &d)| {
                let img = self.matrix.column(j);
                self.target.is_zero_elem(&img) || self.target.homogeneous_degree(&img) == Some(d)
            }),
            _ => false,
        }
    }

    /// A linear section `s` with `self ∘ s = id` (requires surjectivity).
    pub fn linear_section(&self) -> Option<Matrix<F>> {
        let id = Matrix::identity(self.target.field(), self.target.dim());
        self.matrix.solve_matrix(&id).ok().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn variable_images_define_maps() {
        let r = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^5"]).unwrap());
        let t = Arc::new(FdAlgebra::parse(&Rationals, &[("z", 1)], &["z^2"]).unwrap());
        let z = t.names()[0].1.clone();
        let e = AlgebraMorphism::from_name_images(&r, &t, &[z]).unwrap();
        assert!(e.is_surjective());
        assert_eq!(e.kernel().dim(), 3);
        assert!(e.is_graded());
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let r = Arc::new(FdAlgebra::parse(&Rationals, &[("x", 1)], &["x^2"]).unwrap());
        let t = Arc::new(FdAlgebra::parse(&Rationals, &[("z", 1)], &["z^3"]).unwrap());
        // x -> z would need z^2 = 0
        let z = t.names()[0].1.clone();
        assert!(AlgebraMorphism::from_name_images(&r, &t, &[z]).is_err());
        let mut bad = Matrix::zeros(&Rationals, 3, 2);
        bad.set(0, 0, Rationals.from_i64(1));
        bad.set(0, 1, Rationals.from_i64(1));
        assert_eq!(AlgebraMorphism::new(r, t, bad).unwrap_err(), AlgebraError::NotMultiplicative(1, 1));
    }
}
