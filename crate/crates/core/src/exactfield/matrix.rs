use std::fmt;

use super::elim::{rref, Echelon};
use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
///
/// Every basis this type returns (kernels, images) is in canonical form: the basis
/// vectors, read as rows, form a reduced row echelon matrix. Equal subspaces therefore
/// produce equal bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_scalars(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { field, rows, cols, data })
    }

    /// Builds a matrix from integer entries in row-major order, reducing into the field.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self {
            field,
            rows,
            cols,
            data: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(&self.data[idx], v);
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !f.is_zero(b) {
                        out.add_at(i, j, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        self.with_data(data)
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in difference");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Self {
        Self {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, rhs.rows, "row count mismatch in hstack");
        let mut out = Self::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.cols, "column count mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Self {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, self.cols, rhs);
        out
    }

    pub(crate) fn write_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Self {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    fn echelon(&self) -> Echelon {
        rref(self.field, self.rows, self.cols, &self.data)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let e = self.echelon();
        (
            Self {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data: e.data,
            },
            e.pivots,
        )
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().pivots.len()
    }

    /// Columns form the canonical basis of the null space.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut gens = Self::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            gens.set(k, fc, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                gens.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        canonical_rows(&gens).transpose()
    }

    /// Columns form the canonical basis of the column space.
    pub fn image_basis(&self) -> ExactMatrix {
        canonical_rows(&self.transpose()).transpose()
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let aug = self.hstack(&Self::from_columns(f, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self · X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for b in rhs.columns() {
            match self.solve(&b)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Self::from_columns(self.field, self.cols, &cols)))
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

/// Nonzero rows of the RREF of `m`.
fn canonical_rows(m: &ExactMatrix) -> ExactMatrix {
    let (r, pivots) = m.rref();
    let keep: Vec<usize> = (0..pivots.len()).collect();
    r.select_rows(&keep)
}

/// `ambient_dim` minus the dimension of the span of `basis` (given as columns).
pub fn quotient_dim(ambient_dim: usize, basis: &ExactMatrix) -> Result<usize> {
    if basis.cols() > 0 && basis.rows() != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "basis vectors of length {} in a space of dimension {ambient_dim}",
            basis.rows()
        )));
    }
    Ok(ambient_dim - basis.rank())
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {} {:?}", self.rows, self.cols, self.field, self.render())
    }
}
