use std::fmt;

use super::echelon::{to_dense, to_sparse, Echelon, SparseVec};
use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Result of `solve`: one particular solution and a kernel basis.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|x| field.from_i64(*x)))
            .collect();
        Self::from_vec(field, r, c, data)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_sparse_columns(field: Field, rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn from_sparse_rows(field: Field, cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, v) in rows.iter().enumerate() {
            for (j, x) in v {
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn sparse_row(&self, r: usize) -> SparseVec {
        to_sparse(&self.data[r * self.cols..(r + 1) * self.cols])
    }

    pub fn sparse_col(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter(|r| !self.get(*r, c).is_zero())
            .map(|r| (r, self.get(r, c).clone()))
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                self.shape(),
                o.shape()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix::from_vec(f, self.rows, self.cols, data))
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.try_add(o).expect("shape mismatch in add")
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.neg(&Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix::from_vec(
            f,
            self.rows,
            self.cols,
            self.data.iter().map(|x| f.mul(c, x)).collect(),
        )
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{:?} * {:?}",
                self.shape(),
                o.shape()
            )));
        }
        let f = self.field;
        let mut m = Matrix::zeros(f, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(m.get(r, c), &f.mul(a, b));
                    m.set(r, c, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("shape mismatch in mul")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = f.add(&acc, &f.mul(a, &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..o.cols {
                m.set(r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix::from_vec(self.field, self.rows + o.rows, self.cols, data)
    }

    pub fn block_diag(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + o.rows, self.cols + o.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, o);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, o: &Matrix) {
        for r in 0..o.rows {
            for c in 0..o.cols {
                self.set(r0 + r, c0 + c, o.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, idx.len(), self.cols);
        for (i, r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(*r, c).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, *c).clone());
            }
        }
        m
    }

    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        for r in 0..self.rows {
            let v = self.sparse_row(r);
            if !v.is_empty() {
                e.insert(&v);
            }
        }
        e
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn row_reduce(&self) -> (Matrix, Vec<usize>) {
        let e = self.row_echelon();
        (
            Matrix::from_sparse_rows(self.field, self.cols, &e.basis()),
            e.pivots(),
        )
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().rank()
    }

    /// Columns spanning `{x : A x = 0}`, one per free column of the reduced form.
    pub fn kernel(&self) -> Matrix {
        let e = self.row_echelon();
        Matrix::from_sparse_columns(self.field, self.cols, &e.null_space())
    }

    /// Canonical basis of the column space, as columns in reduced form.
    pub fn image(&self) -> Matrix {
        let e = self.transpose().row_echelon();
        Matrix::from_sparse_columns(self.field, self.rows, &e.basis())
    }

    /// Solves `A X = B`. `None` when some column of `B` lies outside the
    /// column space of `A`.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Solution>> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve {:?} with {:?}",
                self.shape(),
                b.shape()
            )));
        }
        let n = self.cols;
        let aug = self.hstack(b);
        let e = aug.row_echelon();
        if e.pivots().iter().any(|p| *p >= n) {
            return Ok(None);
        }
        let f = self.field;
        let mut x = Matrix::zeros(f, n, b.cols);
        for row in e.basis() {
            let p = row[0].0;
            for (c, v) in &row {
                if *c >= n {
                    x.set(p, c - n, v.clone());
                }
            }
        }
        Ok(Some(Solution {
            particular: x,
            kernel: self.kernel(),
        }))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(s)) if s.kernel.cols() == 0 => Some(s.particular),
            _ => None,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        if self.rows == 0 {
            return true;
        }
        let mut p = self.clone();
        let mut r = p.rank();
        loop {
            if r == 0 {
                return true;
            }
            p = p.mul(self);
            let r2 = p.rank();
            if r2 == r {
                return false;
            }
            r = r2;
        }
    }

    pub fn dense_col(v: &SparseVec, n: usize) -> Vec<Scalar> {
        to_dense(v, n)
    }
}
