//! Dense matrices over a [`FieldSpec`].
//!
//! Entries are field element indices stored row-major. All canonical bases
//! (kernels, complements, intersections) come from the reduced row echelon
//! form with a fixed pivot rule, so repeated runs produce identical matrices.

use std::fmt;

use crate::error::{dim_err, Error, Result};
use crate::gf::FieldSpec;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: FieldSpec,
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Hamming weight of a vector of element indices.
pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(dim_err(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&x) = data.iter().find(|&&x| x >= field.order()) {
            return Err(Error::InvalidParams(format!(
                "entry {x} is not an element of GF({})",
                field.order()
            )));
        }
        Ok(Matrix { rows, cols, data, field: field.clone() })
    }

    /// Builds a matrix from rows; all rows must have the same length. An empty
    /// row list needs the column count, use [`Matrix::zeros`] for that.
    pub fn from_rows<R: AsRef<[u32]>>(field: &FieldSpec, rows: &[R]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(dim_err("ragged rows"));
            }
            data.extend_from_slice(r.as_ref());
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn row_vector(field: &FieldSpec, v: &[u32]) -> Result<Matrix> {
        Matrix::new(field, 1, v.len(), v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(dim_err(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
            })
            .collect()
    }

    /// Whether `self · v = 0`, exiting at the first nonzero row.
    pub(crate) fn annihilates(&self, v: &[u32]) -> bool {
        let f = &self.field;
        (0..self.rows).all(|i| {
            self.row(i)
                .iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
                == 0
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(dim_err("cannot add matrices of different shapes"));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    /// Square matrix power.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "matrix power needs a square matrix");
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut acc = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&acc).expect("square");
            }
            acc = acc.mul(&acc).expect("square");
            e >>= 1;
        }
        result
    }

    /// Gauss-Jordan elimination. Pivots are taken column by column, using the
    /// first row at or below the current pivot row with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning {v : self · v = 0}. One basis vector per free column, in
    /// index order: it has a 1 at the free column and the negated reduced
    /// entries at the pivot columns.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let Rref { reduced, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            k.set(row, fc, 1);
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                k.set(row, pc, f.neg(reduced.get(i, fc)));
            }
        }
        k
    }

    /// Basis of the dual of the row space: vectors orthogonal to every row.
    pub fn orthogonal_complement(&self) -> Matrix {
        self.kernel_basis()
    }

    /// Basis of rowspace(self) ∩ rowspace(other), computed as the dual of
    /// the sum of the two duals.
    pub fn code_intersection(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(dim_err("code intersection needs equal lengths"));
        }
        let duals = self.kernel_basis().vstack(&other.kernel_basis())?;
        Ok(duals.kernel_basis())
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_basis(&self) -> Matrix {
        let Rref { reduced, rank, .. } = self.rref();
        reduced.select_rows(&(0..rank).collect::<Vec<_>>())
    }

    /// The first maximal set of linearly independent rows, in order.
    pub fn independent_rows(&self) -> Matrix {
        self.select_rows(&self.transpose().rref().pivots)
    }

    pub fn row_space_contains(&self, v: &[u32]) -> Result<bool> {
        let stacked = self.vstack(&Matrix::row_vector(&self.field, v)?)?;
        Ok(stacked.rank() == self.rank())
    }

    pub fn same_row_space(&self, other: &Matrix) -> Result<bool> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Ok(false);
        }
        let r = self.rank();
        Ok(r == other.rank() && self.vstack(other)?.rank() == r)
    }

    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(dim_err("only square matrices are invertible"));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(reduced.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(dim_err("vstack needs equal column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(dim_err("hstack needs equal row counts"));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix { rows: self.rows, cols, data, field: self.field.clone() })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: rows.len(), cols: self.cols, data, field: self.field.clone() }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let cols: Vec<usize> = cols.collect();
        self.select_rows(&rows.collect::<Vec<_>>()).select_columns(&cols)
    }

    /// Maximum Hamming weight over columns.
    pub fn max_column_weight(&self) -> usize {
        (0..self.cols).map(|j| weight(&self.column(j))).max().unwrap_or(0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
