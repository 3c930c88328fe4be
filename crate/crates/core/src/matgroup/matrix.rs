use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::exact_algebra::{FieldElem, RingElem};

/// A dense row-major matrix over an exact ring.
///
/// `zero` is a ring constant carried along so that empty matrices and fresh
/// identities know which ring (prime, radicand) they live in.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: RingElem> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        let zero = like.zero_like();
        ExactMatrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, like: &T) -> Self {
        let mut m = ExactMatrix::zeros(n, n, like);
        for i in 0..n {
            m.data[i * n + i] = like.one_like();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, like: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data, zero: like.zero_like() }
    }

    /// Builds from a row-major vector of `rows * cols` entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>, like: &T) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let zero = like.zero_like();
        if data.iter().any(|x| !x.same_ring(&zero)) {
            return Err(Error::RingMismatch("matrix entries from different rings".into()));
        }
        Ok(ExactMatrix { rows, cols, data, zero })
    }

    /// Builds from nonempty, equally long rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let like = rows
            .first()
            .and_then(|r| r.first())
            .cloned()
            .ok_or_else(|| Error::DimensionMismatch("empty row list".into()))?;
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        ExactMatrix::from_vec(n, cols, rows.into_iter().flatten().collect(), &like)
    }

    pub fn diagonal(entries: &[T], like: &T) -> Self {
        let n = entries.len();
        let mut m = ExactMatrix::zeros(n, n, like);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The ring's zero.
    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn one_elem(&self) -> T {
        self.zero.one_like()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: RingElem>(&self, like: &U, f: impl Fn(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: like.zero_like(),
        }
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.zero.same_ring(&other.zero) {
            return Err(Error::RingMismatch("matrix product across rings".into()));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let cur = std::mem::replace(&mut out.data[idx], self.zero.clone());
                    out.data[idx] = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c.clone() * x.clone()).collect(),
            zero: self.zero.clone(),
        }
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(self.zero.clone(), |acc, (i, x)| acc + x.clone() * self.get(i, j).clone())
            })
            .collect())
    }

    /// The `nr × nc` submatrix with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        ExactMatrix::from_fn(nr, nc, &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `b` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `[[a, b], [c, d]]` from four compatible blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible block shapes".into()));
        }
        let mut m = ExactMatrix::zeros(a.rows + c.rows, a.cols + b.cols, &a.zero);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        Ok(m)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let s = self.get(src, j).clone();
            if s.is_zero() {
                continue;
            }
            let idx = dst * self.cols + j;
            let cur = std::mem::replace(&mut self.data[idx], self.zero.clone());
            self.data[idx] = cur + c.clone() * s;
        }
    }

    /// `col[dst] += c · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let s = self.get(i, src).clone();
            if s.is_zero() {
                continue;
            }
            let idx = i * self.cols + dst;
            let cur = std::mem::replace(&mut self.data[idx], self.zero.clone());
            self.data[idx] = cur + s * c.clone();
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            let cur = std::mem::replace(&mut self.data[idx], self.zero.clone());
            self.data[idx] = c.clone() * cur;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &T) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            let cur = std::mem::replace(&mut self.data[idx], self.zero.clone());
            self.data[idx] = cur * c.clone();
        }
    }
}

/// Reduced row echelon data: the reduced matrix, pivot columns and the
/// determinant factor accumulated by the elimination.
pub struct Echelon<T> {
    pub reduced: ExactMatrix<T>,
    pub pivots: Vec<usize>,
    det_factor: T,
}

impl<T: FieldElem> ExactMatrix<T> {
    /// Gauss–Jordan elimination with the lowest-index nonzero pivot.
    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        // det(self) = det_factor · det(reduced) for square input
        let mut det_factor = self.one_elem();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                m.swap_rows(p, row);
                det_factor = -det_factor;
            }
            let pv = m.get(row, col).clone();
            let inv = pv.inv().expect("nonzero pivot");
            m.scale_row(row, &inv);
            det_factor = det_factor * pv;
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let c = -m.get(i, col).clone();
                    m.add_row_multiple(i, row, &c);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots, det_factor }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let e = self.echelon();
        if e.pivots.len() < self.rows {
            Ok(self.zero.clone())
        } else {
            Ok(e.det_factor)
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = ExactMatrix::from_blocks(
            self,
            &ExactMatrix::identity(n, &self.zero),
            &ExactMatrix::zeros(0, n, &self.zero),
            &ExactMatrix::zeros(0, n, &self.zero),
        )?;
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(e.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `Y* = (Y^T)^{-1}`.
    pub fn star(&self) -> Result<Self> {
        self.transpose().inverse()
    }
}

impl<T: RingElem> Mul for &ExactMatrix<T> {
    type Output = ExactMatrix<T>;

    /// Panics on a dimension mismatch; use [`ExactMatrix::mul`] to recover.
    fn mul(self, rhs: &ExactMatrix<T>) -> ExactMatrix<T> {
        ExactMatrix::mul(self, rhs).expect("matrix product dimensions")
    }
}

impl<T: RingElem> ExactMatrix<T> {
    /// Aligned, deterministic text rendering.
    pub fn pretty(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for i in 0..self.rows {
            out.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    out.push_str("  ");
                }
                let c = &cells[i * self.cols + j];
                for _ in c.chars().count()..width {
                    out.push(' ');
                }
                out.push_str(c);
            }
            out.push_str("]\n");
        }
        out
    }
}

impl<T: RingElem> fmt::Debug for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{}", self.pretty())
    }
}

impl<T: RingElem> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}
