//! Subspaces of `F^n` kept in reduced echelon form.
//!
//! Every basis row has a 1 in its pivot column and zeros in all other pivot
//! columns, so the coordinates of a member vector are simply its entries at
//! the pivots, and the non-pivot columns index a basis of the quotient.

use super::field::Field;
use super::matrix::{kernel_from_rref, Matrix};

#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn spanned_by<I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            if s.dim() == ambient {
                break;
            }
            s.insert(v);
        }
        s
    }

    /// Null space of a matrix. Each basis vector is pivoted at one of the
    /// free columns of the echelon form.
    pub fn kernel(m: &Matrix<F>) -> Self {
        let rref = m.rref();
        let mut is_pivot = vec![false; m.cols()];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let pivots = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
        let rows = kernel_from_rref(&rref.matrix, &rref.pivots);
        Subspace { field: m.field().clone(), ambient: m.cols(), rows, pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::spanned_by(m.field(), m.rows(), (0..m.cols()).map(|j| m.column(j)))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(&self.field, self.ambient, &self.rows)
    }

    /// Remainder of `v` after clearing every pivot entry.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&r[p]) {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                f.sub_mul_assign(x, &c, y);
            }
        }
        r
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is not a member.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of a vector already known to lie in the subspace.
    pub fn coordinates_unchecked(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The member vector with the given coordinates.
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.dim());
        let f = &self.field;
        let mut v = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                f.add_mul_assign(x, c, y);
            }
        }
        v
    }

    /// Add `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                f.sub_mul_assign(x, &c, y);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn extend<I: IntoIterator<Item = Vec<F::Elem>>>(&mut self, vectors: I) {
        for v in vectors {
            if self.dim() == self.ambient {
                return;
            }
            self.insert(v);
        }
    }

    /// Columns indexing a basis of the quotient `F^n / self`, ascending.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Quotient coordinates of `v`.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Dimension of the quotient `F^n / self`.
    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }
}

/// A quotient space `F^n / W` with explicit projection and section matrices.
#[derive(Debug, Clone)]
pub struct Quotient<F: Field> {
    pub relations: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(relations: Subspace<F>) -> Self {
        let complement = relations.complement_indices();
        Quotient { relations, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.relations.reduce(v);
        self.complement.iter().map(|&i| r[i].clone()).collect()
    }

    /// A representative of the class with quotient coordinates `q`.
    pub fn lift(&self, q: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.relations.field();
        let mut v = vec![f.zero(); self.relations.ambient()];
        for (x, &i) in q.iter().zip(&self.complement) {
            v[i] = x.clone();
        }
        v
    }

    /// Matrix of the map induced on quotients by `map: F^n -> F^m`, where
    /// `target` is the quotient of `F^m`. The caller guarantees that `map`
    /// sends relations into relations.
    pub fn induced(&self, map: &Matrix<F>, target: &Quotient<F>) -> Matrix<F> {
        let f = self.relations.field();
        let cols: Vec<Vec<F::Elem>> = (0..self.dim())
            .map(|j| {
                let mut e = vec![f.zero(); self.dim()];
                e[j] = f.one();
                target.project(&map.mul_vec(&self.lift(&e)))
            })
            .collect();
        Matrix::from_columns(f, target.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn coordinates_roundtrip() {
        let f = Rationals;
        let v1: Vec<_> = [1, 2, 0].iter().map(|&x| f.from_i64(x)).collect();
        let v2: Vec<_> = [0, 1, 1].iter().map(|&x| f.from_i64(x)).collect();
        let s = Subspace::spanned_by(&f, 3, vec![v1.clone(), v2.clone()]);
        assert_eq!(s.dim(), 2);
        let w: Vec<_> = v1.iter().zip(&v2).map(|(a, b)| f.add(&f.mul(&f.from_i64(3), a), b)).collect();
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.combine(&c), w);
        let outside: Vec<_> = [0, 0, 1].iter().map(|&x| f.from_i64(x)).collect();
        assert!(!s.contains(&outside));
    }

    #[test]
    fn kernel_is_a_valid_subspace() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 2, 0, 1], &[0, 0, 1, 1]]).unwrap();
        let k = Subspace::kernel(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.mul_vec(v).iter().all(|x| *x == 0));
        }
        let mut grown = k.clone();
        assert!(!grown.insert(k.combine(&[1, 2])));
        assert!(grown.insert(vec![1, 0, 0, 0]));
        assert_eq!(grown.dim(), 3);
    }

    #[test]
    fn quotient_dimension() {
        let f = PrimeField::new(2).unwrap();
        let s = Subspace::spanned_by(&f, 3, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(s.dim(), 2);
        let q = Quotient::new(s);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[1, 1, 0]), vec![0]);
        assert_eq!(q.project(&[1, 0, 0]), vec![1]);
    }
}
