use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default refusal threshold for dense matrices, in cells.
pub const DEFAULT_CELL_BUDGET: usize = 4_000_000;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds from rows; all rows must have equal length. `cols` is only used
    /// when there are no rows.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<T>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| T::from_i64_c(x)).collect())
            .collect();
        Self::from_rows(&r, 0).expect("rectangular literal")
    }

    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Result<Self> {
        let rows = cols.first().map_or(rows, |c| c.len());
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn check_budget(rows: usize, cols: usize, budget: usize) -> Result<()> {
        let cells = rows.saturating_mul(cols);
        if cells > budget {
            return Err(Error::Budget { cells, budget });
        }
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[i * rhs.cols + j];
                    *cell = cell.fma_c(a, b)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o = o.fma_c(a, b)?;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        self.zip_with(rhs, |a, b| a.add_c(b))
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        self.zip_with(rhs, |a, b| a.sub_c(b))
    }

    fn zip_with(&self, rhs: &Mat<T>, f: impl Fn(&T, &T) -> Result<T>) -> Result<Mat<T>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &T) -> Result<Mat<T>> {
        let data = self
            .data
            .iter()
            .map(|a| a.mul_c(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat<T>> {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension("hstack with unequal row counts".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].clone_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].clone_from_slice(rhs.row(i));
        }
        Ok(out)
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.cols != rhs.cols {
            return Err(Error::Dimension("vstack with unequal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[&Mat<T>]) -> Mat<T> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat<T> {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            out.row_mut(k).clone_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat<T> {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
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

    /// row[dst] += q * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        if q.is_zero() {
            return Ok(());
        }
        let c = self.cols;
        for j in 0..c {
            let s = &self.data[src * c + j];
            if s.is_zero() {
                continue;
            }
            let v = self.data[dst * c + j].fma_c(q, s)?;
            self.data[dst * c + j] = v;
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        if q.is_zero() {
            return Ok(());
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.data[i * c + src];
            if s.is_zero() {
                continue;
            }
            let v = self.data[i * c + dst].fma_c(q, s)?;
            self.data[i * c + dst] = v;
        }
        Ok(())
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in self.row_mut(i) {
            *v = -v.clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Reduces row `i` modulo `m` into `[0, m)`.
    pub fn reduce_row_mod(&mut self, i: usize, m: &T) {
        for v in self.row_mut(i) {
            *v = v.modulo(m);
        }
    }

    /// Exact determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)]
                        .mul_c(&a[(k, k)])?
                        .sub_c(&a[(i, k)].mul_c(&a[(k, j)])?)?;
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Column-sparse matrix; used for differentials of large complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<T> {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn from_dense(m: &Mat<T>) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMat {
            rows: m.rows(),
            columns,
        }
    }

    pub fn to_dense(&self) -> Mat<T> {
        self.select_dense(&(0..self.cols()).collect::<Vec<_>>())
    }

    pub fn select_dense(&self, cols: &[usize]) -> Mat<T> {
        let mut m = Mat::zeros(self.rows, cols.len());
        for (k, &j) in cols.iter().enumerate() {
            for (i, v) in &self.columns[j] {
                m[(*i, k)] = v.clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols() {
            return Err(Error::Dimension("sparse mat-vec length".into()));
        }
        let mut out = vec![T::zero(); self.rows];
        for (x, col) in v.iter().zip(&self.columns) {
            if x.is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] = out[*i].fma_c(a, x)?;
            }
        }
        Ok(out)
    }

    /// self * rhs
    pub fn mul(&self, rhs: &SparseMat<T>) -> Result<SparseMat<T>> {
        if self.cols() != rhs.rows {
            return Err(Error::Dimension("sparse product shape".into()));
        }
        let mut columns = Vec::with_capacity(rhs.cols());
        for col in &rhs.columns {
            let mut acc: Vec<(usize, T)> = Vec::new();
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    acc.push((*i, a.mul_c(b)?));
                }
            }
            columns.push(compress(acc)?);
        }
        Ok(SparseMat {
            rows: self.rows,
            columns,
        })
    }
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn compress<T: Scalar>(mut entries: Vec<(usize, T)>) -> Result<Vec<(usize, T)>> {
    entries.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, T)> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = w.add_c(&v)?,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    Ok(out)
}
