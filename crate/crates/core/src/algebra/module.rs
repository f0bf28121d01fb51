use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

use super::{AlgebraError, AlgebraMorphism, FdAlgebra, Vector};

/// A finite-dimensional module, given by the action matrix of every algebra
/// basis vector. Degrees may be negative (duals reverse them).
#[derive(Clone)]
pub struct FdModule<F: Field> {
    algebra: Arc<FdAlgebra<F>>,
    dim: usize,
    degrees: Option<Vec<i32>>,
    action: Vec<Matrix<F>>,
}

impl<F: Field> fmt::Debug for FdModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdModule(dim {} over algebra of dim {})", self.dim, self.algebra.dim())
    }
}

impl<F: Field> FdModule<F> {
    /// Checks that `e_0` acts as the identity and that the action is multiplicative.
    pub fn new(
        algebra: Arc<FdAlgebra<F>>,
        dim: usize,
        degrees: Option<Vec<i32>>,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, AlgebraError> {
        let m = FdModule { algebra, dim, degrees, action };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let a = &self.algebra;
        let f = a.field();
        if self.action.len() != a.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: self.action.len() });
        }
        if self.action.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(AlgebraError::BadAction("action matrix has the wrong size".into()));
        }
        if self.action[0] != Matrix::identity(f, self.dim) {
            return Err(AlgebraError::BadAction("unit does not act as the identity".into()));
        }
        for i in 1..a.dim() {
            for j in i..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act_matrix(&a.basis_product(i, j));
                if lhs != rhs {
                    return Err(AlgebraError::BadAction(format!("e{i}*e{j} acts inconsistently")));
                }
            }
        }
        if let Some(d) = &self.degrees {
            if d.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: d.len() });
            }
            if let Some(ad) = a.degrees() {
                for (i, m) in self.action.iter().enumerate() {
                    for c in 0..self.dim {
                        for r in 0..self.dim {
                            if !f.is_zero(m.get(r, c)) && d[r] != d[c] + ad[i] as i32 {
                                return Err(AlgebraError::BadAction(format!("e{i} does not act homogeneously")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra acting on itself.
    pub fn regular(a: &Arc<FdAlgebra<F>>) -> Self {
        let action = (0..a.dim()).map(|i| a.basis_mult_matrix(i)).collect();
        let degrees = a.degrees().map(|d| d.iter().map(|&x| x as i32).collect());
        FdModule { algebra: a.clone(), dim: a.dim(), degrees, action }
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(a: &Arc<FdAlgebra<F>>) -> Self {
        let f = a.field();
        let action = (0..a.dim())
            .map(|i| {
                let mut m = Matrix::zeros(f, 1, 1);
                if i == 0 {
                    m.set(0, 0, f.one());
                }
                m
            })
            .collect();
        let degrees = a.degrees().map(|_| vec![0]);
        FdModule { algebra: a.clone(), dim: 1, degrees, action }
    }

    /// A submodule spanned by `sub` (a subspace of this module's space, closed
    /// under the action), on the subspace's echelon basis.
    pub fn submodule(&self, sub: &Subspace<F>) -> Self {
        let f = self.algebra.field();
        let k = sub.dim();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vector<F>> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coordinates(&m.mul_vec(b)).expect("subspace is not a submodule"))
                    .collect();
                Matrix::from_columns(f, k, &cols)
            })
            .collect();
        let degrees = self.degrees.as_ref().map(|d| {
            sub.basis().iter().map(|b| b.iter().position(|x| !f.is_zero(x)).map(|i| d[i]).unwrap_or(0)).collect()
        });
        FdModule { algebra: self.algebra.clone(), dim: k, degrees, action }
    }

    /// The quotient by a submodule, on the basis vectors complementary to its pivots.
    pub fn quotient(&self, sub: &Subspace<F>) -> Self {
        let f = self.algebra.field();
        let keep = sub.complement_indices();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vector<F>> = keep
                    .iter()
                    .map(|&c| {
                        let r = sub.reduce(&m.column(c));
                        keep.iter().map(|&k| r[k].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(f, keep.len(), &cols)
            })
            .collect();
        let degrees = self.degrees.as_ref().map(|d| keep.iter().map(|&k| d[k]).collect());
        FdModule { algebra: self.algebra.clone(), dim: keep.len(), degrees, action }
    }

    /// Restriction of scalars along `phi: R -> T` (this module is over `T`).
    pub fn restrict(&self, phi: &AlgebraMorphism<F>) -> Result<Self, AlgebraError> {
        if phi.target().dim() != self.algebra.dim() {
            return Err(AlgebraError::Mismatch);
        }
        let r = phi.source();
        let action = (0..r.dim()).map(|i| self.act_matrix(&phi.matrix().column(i))).collect();
        Ok(FdModule { algebra: r.clone(), dim: self.dim, degrees: self.degrees.clone(), action })
    }

    /// `Hom_k(M, k)` with the contragredient action; degree `d` becomes `shift - d`.
    pub fn dual(&self, shift: i32) -> Self {
        let action = self.action.iter().map(|m| m.transpose()).collect();
        let degrees = self.degrees.as_ref().map(|d| d.iter().map(|&x| shift - x).collect());
        FdModule { algebra: self.algebra.clone(), dim: self.dim, degrees, action }
    }

    /// Same module with the grading dropped.
    pub fn without_degrees(&self) -> Self {
        FdModule { degrees: None, ..self.clone() }
    }

    /// Same module with all degrees moved by `shift`.
    pub fn shifted(&self, shift: i32) -> Self {
        let mut m = self.clone();
        if let Some(d) = &mut m.degrees {
            d.iter_mut().for_each(|x| *x += shift);
        }
        m
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn degrees(&self) -> Option<&[i32]> {
        self.degrees.as_deref()
    }
    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Matrix by which the algebra element `a` acts.
    pub fn act_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.algebra.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn act(&self, a: &[F::Elem], m: &[F::Elem]) -> Vector<F> {
        self.act_matrix(a).mul_vec(m)
    }

    /// Action matrices of the minimal generators of the maximal ideal.
    pub fn generator_actions(&self) -> Vec<Matrix<F>> {
        self.algebra.min_generator_indices().into_iter().map(|i| self.action[i].clone()).collect()
    }

    /// `m M`.
    pub fn max_ideal_times(&self) -> Subspace<F> {
        let f = self.algebra.field();
        let mut vs = Vec::new();
        for g in self.generator_actions() {
            vs.extend(g.columns());
        }
        Subspace::span(f, self.dim, &vs)
    }

    /// Minimal number of generators, `dim M / mM`.
    pub fn num_generators(&self) -> usize {
        self.dim - self.max_ideal_times().dim()
    }

    pub fn socle(&self) -> Subspace<F> {
        let f = self.algebra.field();
        let gens = self.generator_actions();
        if gens.is_empty() {
            return Subspace::full(f, self.dim);
        }
        let mut stacked = gens[0].clone();
        for g in &gens[1..] {
            stacked = stacked.vstack(g);
        }
        Subspace::kernel(&stacked)
    }

    /// Annihilator of the module, as an ideal of the algebra.
    pub fn annihilator(&self) -> Subspace<F> {
        let a = &self.algebra;
        let f = a.field();
        let n = a.dim();
        // rows: entries of the action of sum c_i e_i, linear in c
        let mut rows = Vec::new();
        for r in 0..self.dim {
            for c in 0..self.dim {
                rows.push((0..n).map(|i| self.action[i].get(r, c).clone()).collect::<Vec<_>>());
            }
        }
        if rows.is_empty() {
            return Subspace::full(f, n);
        }
        Subspace::kernel(&Matrix::from_rows(f, n, &rows))
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().dim() == 0
    }
}

/// A linear map between modules over the same algebra.
#[derive(Clone)]
pub struct ModuleMorphism<F: Field> {
    source: FdModule<F>,
    target: FdModule<F>,
    matrix: Matrix<F>,
}

impl<F: Field> fmt::Debug for ModuleMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism({} -> {})", self.source.dim(), self.target.dim())
    }
}

impl<F: Field> ModuleMorphism<F> {
    pub fn new(source: FdModule<F>, target: FdModule<F>, matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        if source.algebra().dim() != target.algebra().dim() {
            return Err(AlgebraError::Mismatch);
        }
        let m = ModuleMorphism { source, target, matrix };
        if !m.is_linear() {
            return Err(AlgebraError::NotModuleLinear);
        }
        Ok(m)
    }

    pub fn source(&self) -> &FdModule<F> {
        &self.source
    }
    pub fn target(&self) -> &FdModule<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    fn is_linear(&self) -> bool {
        let idx = self.source.algebra().min_generator_indices();
        idx.iter().all(|&i| self.matrix.mul(self.source.action(i)) == self.target.action(i).mul(&self.matrix))
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vector<F> {
        self.matrix.mul_vec(v)
    }

    pub fn kernel(&self) -> Subspace<F> {
        Subspace::kernel(&self.matrix)
    }

    pub fn image(&self) -> Subspace<F> {
        Subspace::column_space(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

/// Basis of `Hom_A(M, N)` as `N.dim() x M.dim()` matrices.
pub fn hom_space<F: Field>(m: &FdModule<F>, n: &FdModule<F>) -> Vec<Matrix<F>> {
    let f = m.algebra().field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    let idx = m.algebra().min_generator_indices();
    // X is indexed by (r, c) -> r * dm + c; equation (X A - B X)[r][c'] = 0
    let mut rows: Vec<Vector<F>> = Vec::new();
    for &g in &idx {
        let a = m.action(g);
        let b = n.action(g);
        for r in 0..dn {
            for c2 in 0..dm {
                let mut row = vec![f.zero(); unknowns];
                for c in 0..dm {
                    let x = a.get(c, c2);
                    if !f.is_zero(x) {
                        row[r * dm + c] = f.add(&row[r * dm + c], x);
                    }
                }
                for r2 in 0..dn {
                    let x = b.get(r, r2);
                    if !f.is_zero(x) {
                        row[r2 * dm + c2] = f.sub(&row[r2 * dm + c2], x);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let basis: Vec<Vector<F>> = if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut v = vec![f.zero(); unknowns];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, unknowns, &rows).nullspace().columns()
    };
    basis
        .into_iter()
        .map(|v| {
            let rws: Vec<Vector<F>> = (0..dn).map(|r| v[r * dm..(r + 1) * dm].to_vec()).collect();
            Matrix::from_rows(f, dm, &rws)
        })
        .collect()
}
