//! Dense matrices over an exact scalar ring.
//!
//! Row-major. Homomorphism convention throughout the crate: a matrix `M`
//! with `rows` inputs and `cols` outputs represents the map `x ↦ x·M` on
//! row vectors, so composition reads left to right: `(f then g) = f.mul(g)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.row(i).to_vec()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Mat::<T>::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }

    pub fn neg(&self) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }

    /// Vertical stack: `self` on top of `below`.
    pub fn hconcat(&self, right: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, right.rows, "row mismatch in hconcat");
        Mat::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                right[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn stack(&self, below: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Mat { rows: self.rows + below.rows, cols: self.cols, data }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.rows, "row vector length mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = out[j].clone() + xi.clone() * self[(i, j)].clone();
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "column vector length mismatch");
        let mut out = vec![T::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                out[i] = out[i].clone() + self[(i, j)].clone() * xj.clone();
            }
        }
        out
    }

    pub fn submatrix_cols(&self, keep: &[usize]) -> Mat<T> {
        Mat::from_fn(self.rows, keep.len(), |i, j| self[(i, keep[j])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c · row[src]
    pub fn row_add(&mut self, dst: usize, src: usize, c: &T) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let t = self[(src, j)].clone() * c.clone();
            self[(dst, j)] = self[(dst, j)].clone() + t;
        }
    }

    /// col[dst] += c · col[src]
    pub fn col_add(&mut self, dst: usize, src: usize, c: &T) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let t = self[(i, src)].clone() * c.clone();
            self[(i, dst)] = self[(i, dst)].clone() + t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T: Field> Mat<T> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one() / self[(r, c)].clone();
            for j in 0..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = self[(r, j)].clone() * inv.clone();
                }
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        if self[(r, j)].is_zero() {
                            continue;
                        }
                        let t = self[(r, j)].clone() * f.clone();
                        self[(i, j)] = self[(i, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{x : x·M = 0}` as rows.
    pub fn left_kernel(&self) -> Mat<T> {
        // Solve on the transpose: kernel of M^T acting on column vectors.
        let mut m = self.transpose();
        let pivots = m.rref();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &f in &free {
            let mut v = vec![T::zero(); m.cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)].clone();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Mat::zero(0, self.rows)
        } else {
            Mat::from_rows(rows)
        }
    }

    /// Inverse of a square matrix; None when singular.
    pub fn inverse(&self) -> Option<Mat<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// One solution of `x·M = b`, if any.
    pub fn solve_row(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.cols);
        let m = self.transpose();
        let mut aug = Mat::from_fn(m.rows(), m.cols() + 1, |i, j| {
            if j < m.cols() {
                m[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&m.cols()) {
            return None;
        }
        let mut x = vec![T::zero(); self.rows];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, m.cols())].clone();
        }
        Some(x)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
