//! Incremental sparse row echelon forms.
//!
//! Vectors are inserted one at a time; each insertion reduces the vector
//! against the stored rows. When history tracking is on, every row also
//! carries the combination of inserted vectors that produced it, so a vector
//! that reduces to zero yields a kernel element for free.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

/// Sorted `(index, value)` pairs with no zero values.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn sparse_from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter().enumerate().filter(|(_, e)| !field.is_zero(e)).map(|(i, e)| (i, e.clone())).collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (i, e) in v {
        out[*i] = e.clone();
    }
    out
}

/// Dense scratch buffer that remembers which positions it touched.
struct Accumulator<F: Field> {
    values: Vec<F::Elem>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    fn new(field: &F, dim: usize) -> Self {
        Accumulator { values: vec![field.zero(); dim], touched: Vec::new(), marked: vec![false; dim] }
    }

    fn add_scaled(&mut self, field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) {
        for (i, x) in v {
            if !self.marked[*i] {
                self.marked[*i] = true;
                self.touched.push(*i);
            }
            self.values[*i] = field.add(&self.values[*i], &field.mul(c, x));
        }
    }

    fn drain(&mut self, field: &F) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.marked[i] = false;
            let v = std::mem::replace(&mut self.values[i], field.zero());
            if !field.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

pub struct SparseEchelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    tags: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<usize>,
    track: bool,
    scratch: Vec<F::Elem>,
    in_heap: Vec<bool>,
    tag_acc: Option<Accumulator<F>>,
}

const NO_ROW: usize = usize::MAX;

impl<F: Field> SparseEchelon<F> {
    /// Echelon form for vectors of length `dim` without history.
    pub fn new(field: &F, dim: usize) -> Self {
        Self::build(field, dim, None)
    }

    /// Echelon form that records, for each row, the combination of inserted
    /// tags it came from. Tags live in a space of dimension `tag_dim`.
    pub fn with_history(field: &F, dim: usize, tag_dim: usize) -> Self {
        Self::build(field, dim, Some(tag_dim))
    }

    fn build(field: &F, dim: usize, tag_dim: Option<usize>) -> Self {
        SparseEchelon {
            field: field.clone(),
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: vec![NO_ROW; dim],
            track: tag_dim.is_some(),
            scratch: vec![field.zero(); dim],
            in_heap: vec![false; dim],
            tag_acc: tag_dim.map(|d| Accumulator::new(field, d)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (and its tag) against the stored rows. Returns the residual,
    /// whose entries avoid every pivot column, and the reduced tag.
    fn reduce(
        &mut self,
        v: &SparseVec<F::Elem>,
        tag: Option<&SparseVec<F::Elem>>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = self.field.clone();
        let mut heap = BinaryHeap::new();
        for (i, x) in v {
            self.scratch[*i] = x.clone();
            if !self.in_heap[*i] {
                self.in_heap[*i] = true;
                heap.push(Reverse(*i));
            }
        }
        if let (Some(acc), Some(t)) = (self.tag_acc.as_mut(), tag) {
            acc.add_scaled(&f, &f.one(), t);
        }
        let mut residual = Vec::new();
        while let Some(Reverse(idx)) = heap.pop() {
            self.in_heap[idx] = false;
            let c = std::mem::replace(&mut self.scratch[idx], f.zero());
            if f.is_zero(&c) {
                continue;
            }
            let r = self.pivot_row[idx];
            if r == NO_ROW {
                residual.push((idx, c));
                continue;
            }
            for (j, x) in self.rows[r].iter().skip(1) {
                self.scratch[*j] = f.sub_mul(&self.scratch[*j], &c, x);
                if !self.in_heap[*j] {
                    self.in_heap[*j] = true;
                    heap.push(Reverse(*j));
                }
            }
            if let Some(acc) = self.tag_acc.as_mut() {
                acc.add_scaled(&f, &f.neg(&c), &self.tags[r]);
            }
        }
        let tag_out = match self.tag_acc.as_mut() {
            Some(acc) => acc.drain(&f),
            None => Vec::new(),
        };
        (residual, tag_out)
    }

    /// Tests membership without modifying the echelon form.
    pub fn contains(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let saved = self.tag_acc.take();
        let (res, _) = self.reduce(v, None);
        self.tag_acc = saved;
        res.is_empty()
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        self.insert_tagged(v, &Vec::new()).is_none()
    }

    /// Inserts `v` with history `tag`. If `v` is already in the span, the
    /// returned tag combination maps to zero (a kernel element); otherwise the
    /// vector becomes a new row and `None` is returned.
    pub fn insert_tagged(&mut self, v: &SparseVec<F::Elem>, tag: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (residual, tag) = self.reduce(v, if self.track { Some(tag) } else { None });
        if residual.is_empty() {
            return Some(tag);
        }
        let f = &self.field;
        let inv = f.inv(&residual[0].1).expect("nonzero lead");
        let row: SparseVec<F::Elem> = residual.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
        let tag: SparseVec<F::Elem> = tag.into_iter().map(|(i, x)| (i, f.mul(&x, &inv))).collect();
        self.pivot_row[row[0].0] = self.rows.len();
        self.rows.push(row);
        if self.track {
            self.tags.push(tag);
        }
        None
    }
}
