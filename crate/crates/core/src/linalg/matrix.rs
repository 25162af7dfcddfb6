//! Dense matrices over a [`Field`], with exact Gauss-Jordan elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec;

use super::field::Field;

/// Row-major dense matrix. All entries live in the field carried by the matrix.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Eliminations on matrices with at least this many entries use the thread pool.
const PARALLEL_THRESHOLD: usize = 1 << 14;

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Self::from_vec(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    f.add_mul_assign(d, a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.clone();
        if f.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            f.add_mul_assign(a, c, b);
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols, data }
    }

    /// Restrict to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn rref(&self) -> Rref<F> {
        let parallel = self.data.len() >= PARALLEL_THRESHOLD;
        self.rref_with(parallel)
    }

    /// Gauss-Jordan elimination; `parallel` spreads each elimination sweep
    /// over the thread pool (a no-op without the `parallel` feature).
    pub fn rref_with(&self, parallel: bool) -> Rref<F> {
        let f = self.field.clone();
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let x = f.mul(m.get(r, j), &inv);
                m.data[r * cols + j] = x;
            }
            let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
            let fr = &f;
            exec::for_each_row(&mut m.data, cols, parallel, |i, row| {
                if i == r || fr.is_zero(&row[c]) {
                    return;
                }
                let factor = row[c].clone();
                for (x, pv) in row[c..].iter_mut().zip(&pivot_row) {
                    fr.sub_mul_assign(x, &factor, pv);
                }
            });
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    /// Some `x` with `self * x = b`, or [`Error::Inconsistent`].
    pub fn solve(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let aug = self.hstack(&Matrix::from_columns(f, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![f.zero(); self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(k, self.cols).clone();
        }
        Ok(x)
    }
}

pub(crate) fn kernel_from_rref<F: Field>(rref: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let f = rref.field();
    let cols = rref.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(rref.get(k, free));
            }
            v
        })
        .collect()
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(out, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(&Rationals, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
        let z = Matrix::zeros(&Rationals, 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64_rows(&f2, &[&[1, 1], &[0, 0]]).unwrap());
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(&Rationals, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(&Rationals, 2, 3).kernel_basis().len(), 3);
        let k = q(&[&[1, 2]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // spans (-2, 1)
        assert_eq!(k[0], vec![Rationals.from_i64(-2), Rationals.from_i64(1)]);
    }

    #[test]
    fn solve_examples() {
        let f = Rationals;
        let b = vec![f.from_i64(3), f.from_i64(-4)];
        assert_eq!(Matrix::identity(&f, 2).solve(&b).unwrap(), b);
        let err = Matrix::zeros(&f, 2, 2).solve(&b).unwrap_err();
        assert!(matches!(err, Error::Inconsistent));
        let x = q(&[&[2]]).solve(&[f.one()]).unwrap();
        assert_eq!(Rationals.format(&x[0]), "1/2");
        assert!(q(&[&[1, 2]]).solve(&[f.one(), f.one()]).is_err());
    }

    #[test]
    fn parallel_and_sequential_elimination_agree() {
        let f = PrimeField::new(3).unwrap();
        let data: Vec<u64> = (0..40 * 30).map(|i| (i * 7 + i / 5) % 3).collect();
        let m = Matrix::from_vec(&f, 40, 30, data).unwrap();
        let a = m.rref_with(false);
        let b = m.rref_with(true);
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.pivots, b.pivots);
    }

    fn arb_matrix(p: u64) -> impl Strategy<Value = Matrix<PrimeField>> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |data| {
                Matrix::from_vec(&PrimeField::new(p).unwrap(), r, c, data).unwrap()
            })
        })
    }

    fn arb_rational_matrix() -> impl Strategy<Value = Matrix<Rationals>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-4i64..5, r * c).prop_map(move |data| {
                let data = data.into_iter().map(|x| Rationals.from_i64(x)).collect();
                Matrix::from_vec(&Rationals, r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_mod_p(m in prop_oneof![arb_matrix(2), arb_matrix(3), arb_matrix(5)]) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn rref_idempotent(m in arb_matrix(5)) {
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.rank, twice.rank);
        }

        #[test]
        fn rational_kernel_exact(m in arb_rational_matrix()) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(|x| Rationals.is_zero(x)));
            }
        }

        #[test]
        fn solve_consistent_systems(m in arb_rational_matrix(), seed in prop::collection::vec(-3i64..4, 4)) {
            let x0: Vec<_> = (0..m.cols()).map(|j| Rationals.from_i64(seed[j % seed.len()])).collect();
            let b = m.mul_vec(&x0);
            let x = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }
}
