//! Dense exact linear algebra: fraction-free (Bareiss) forward elimination,
//! reduced row echelon form, null spaces and unique solves.
//!
//! Pivoting always takes the first non-negligible entry in the current
//! column, so results depend only on row and column order.

use std::fmt;

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors, which must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: T) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot.clone() + value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `self * other` where `other` is given as a list of column vectors.
    pub fn mul_columns(&self, columns: &[Vec<T>]) -> Matrix<T> {
        let mut out = Matrix::zeros(self.rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, value) in self.mul_vec(col).into_iter().enumerate() {
                out.set(i, j, value);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let pivots = bareiss_forward(&mut m);
        back_substitute(&mut m, &pivots);
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        bareiss_forward(&mut m).len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in
    /// ascending column order, each with a 1 in its free column.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        self.echelon().null_space()
    }

    /// Solves `self * x = rhs` when the solution exists and is unique.
    pub fn solve_unique(&self, rhs: &[T]) -> Result<Vec<T>, SolveError> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, value) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, value.clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Err(SolveError::Inconsistent);
        }
        if ech.pivots.len() < self.cols {
            return Err(SolveError::Underdetermined {
                free: self.cols - ech.pivots.len(),
            });
        }
        Ok((0..self.cols)
            .map(|r| ech.reduced.get(r, self.cols).clone())
            .collect())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has {free} free variable(s)")]
    Underdetermined { free: usize },
}

/// Result of [`Matrix::echelon`].
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn null_space(&self) -> Vec<Vec<T>> {
        let cols = self.reduced.cols();
        self.free_columns()
            .into_iter()
            .map(|free| {
                let mut v = vec![T::zero(); cols];
                v[free] = T::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// Reduces `v` modulo the row space; the result is supported on the
    /// free columns only.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let factor = out[p].clone();
            if factor.is_negligible() {
                continue;
            }
            for (c, x) in out.iter_mut().enumerate() {
                *x = x.clone() - factor.clone() * self.reduced.get(r, c).clone();
            }
        }
        out
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Bareiss elimination to upper echelon form. Rows are first scaled to
/// integers (which preserves row space), so every division is exact.
/// Returns pivot columns.
fn bareiss_forward<T: Scalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let cols = m.cols;
    for row in m.data.chunks_mut(cols.max(1)) {
        T::clear_denominators(row);
    }
    let mut pivots = Vec::new();
    let mut previous = T::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_negligible()) else {
            continue;
        };
        m.swap_rows(p, r);
        let pivot = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let lead = m.get(i, c).clone();
            for j in c + 1..m.cols {
                let value = (pivot.clone() * m.get(i, j).clone()
                    - lead.clone() * m.get(r, j).clone())
                    / previous.clone();
                m.set(i, j, value);
            }
            m.set(i, c, T::zero());
        }
        previous = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn back_substitute<T: Scalar>(m: &mut Matrix<T>, pivots: &[usize]) {
    for (r, &c) in pivots.iter().enumerate().rev() {
        let pivot = m.get(r, c).clone();
        for j in 0..m.cols {
            let v = m.get(r, j).clone() / pivot.clone();
            m.set(r, j, v);
        }
        m.set(r, c, T::one());
        for i in 0..r {
            let factor = m.get(i, c).clone();
            if factor.is_negligible() {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
            m.set(i, c, T::zero());
        }
    }
}
