//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};

/// A rectangular matrix whose entries all live in one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`DenseMatrix::rank_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// Basis of the right kernel, in reduced row echelon form.
    pub kernel: Vec<Vec<Scalar>>,
    /// Nonzero rows of the reduced row echelon form.
    pub row_space: Vec<Vec<Scalar>>,
    /// Pivot column of each row-space vector.
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in {} inside a matrix over {}",
                        s.field(),
                        field
                    )));
                }
                data.push(s);
            }
        }
        Ok(DenseMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count, so
    /// zero-row matrices keep their width.
    pub fn from_rows_with_cols(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(field, 0, cols));
        }
        let m = Self::from_rows(field, rows)?;
        if m.cols != cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {cols} columns, got {}",
                m.cols
            )));
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in matrix entry");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrix product".into()));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &DenseMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        DenseMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        DenseMatrix {
            data,
            ..self.clone()
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack width".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(DenseMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first nonzero
    /// entry in column order.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Rank, right kernel and row space, all in reduced echelon form.
    pub fn rank_kernel(&self) -> RankKernel {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let row_space: Vec<Vec<Scalar>> = (0..rank).map(|i| r.row(i).to_vec()).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            kernel.push(v);
        }
        let kernel = if kernel.is_empty() {
            kernel
        } else {
            let k = DenseMatrix::from_rows(self.field, kernel).unwrap();
            let (kr, kp) = k.rref();
            (0..kp.len()).map(|i| kr.row(i).to_vec()).collect()
        };
        RankKernel {
            rank,
            kernel,
            row_space,
            pivots,
        }
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rank_kernel().kernel
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "determinant of non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::RankDeficient("matrix is singular".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.select_columns(&cols))
    }

    /// Solves `x · self = b` for a row vector `x`, if a solution exists.
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let t = self.transpose();
        t.solve_right(b)
    }

    /// Solves `self · x = b`, if a solution exists.
    pub fn solve_right(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = match a.first() {
        Some(s) => s.field().zero(),
        None => return Scalar::from_i64(Field::Rational, 0),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Row-space RREF of a list of vectors of length `cols`.
pub fn span_rref(field: Field, cols: usize, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = DenseMatrix::from_rows_with_cols(field, cols, vecs.to_vec()).unwrap();
    m.rank_kernel().row_space
}

/// Dimension of the span of `vecs`.
pub fn span_dim(field: Field, cols: usize, vecs: &[Vec<Scalar>]) -> usize {
    span_rref(field, cols, vecs).len()
}

/// Whether `v` lies in the span of `vecs`.
pub fn in_span(field: Field, vecs: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let cols = v.len();
    let base = span_dim(field, cols, vecs);
    let mut all = vecs.to_vec();
    all.push(v.to_vec());
    span_dim(field, cols, &all) == base
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(field: Field, cols: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    span_rref(field, cols, a) == span_rref(field, cols, b)
}

/// Basis of the intersection of two spans.
pub fn intersect_spans(
    field: Field,
    cols: usize,
    a: &[Vec<Scalar>],
    b: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    // (u, w) with u·A = w·B; the intersection is {u·A}
    let a = span_rref(field, cols, a);
    let b = span_rref(field, cols, b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut stacked = a.clone();
    stacked.extend(b.iter().map(|v| v.iter().map(|s| -s).collect::<Vec<_>>()));
    let m = DenseMatrix::from_rows(field, stacked).unwrap().transpose();
    let out: Vec<Vec<Scalar>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut acc = vec![field.zero(); cols];
            for (i, row) in a.iter().enumerate() {
                for j in 0..cols {
                    acc[j] = &acc[j] + &(&k[i] * &row[j]);
                }
            }
            acc
        })
        .collect();
    span_rref(field, cols, &out)
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "DenseMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
