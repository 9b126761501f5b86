use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.field.vformat(self.row(r)))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: F, nrows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch { expected: nrows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<F::Elem>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, &v).expect("rectangular rows")
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.field.vis_zero(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                f.vaxpy(orow, a, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let f = self.field;
        let mut out = f.vzero(self.rows);
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !f.is_zero(a) {
                    *o = f.add(o, &f.mul(a, x));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.field.vadd(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.field.vsub(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.field.vscale(c, &self.data) }
    }

    pub fn neg(&self) -> Self {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.field.vneg(&self.data) }
    }

    /// self += c·other
    pub fn axpy(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.vaxpy(&mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Commutator AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<F::Elem> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let nf = f.neg(&factor);
                let cols = m.cols;
                f.vaxpy(&mut m.data[i * cols..(i + 1) * cols], &nf, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of the null space {x : self·x = 0}, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = f.vzero(self.cols);
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of self·x = b (free variables set to zero), or `None` if inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = f.vzero(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Rows as small integers (finite fields: enumeration index of each entry).
    pub fn index_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| self.field.index_of(x)).collect())
            .collect()
    }
}

/// Free-standing form of `Matrix::solve`.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    a.solve(b)
}

/// Free-standing form of `Matrix::rref`.
pub fn rref<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.rref()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    #[test]
    fn rref_examples() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), Matrix::from_i64_rows(f, &[&[1, 2], &[0, 0]]));
        let id = Matrix::identity(f, 3);
        assert_eq!(id.rref(), id);
        let z = Matrix::zeros(f, 2, 3);
        assert_eq!(z.rref(), z);
    }

    #[test]
    fn solve_examples() {
        let f = PrimeField::new(5).unwrap();
        let id = Matrix::identity(f, 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let a = Matrix::from_i64_rows(f, &[&[1, 1]]);
        assert_eq!(a.solve(&[0]).unwrap(), Some(vec![0, 0]));
        let z = Matrix::from_i64_rows(f, &[&[0, 0]]);
        assert_eq!(z.solve(&[1]).unwrap(), None);
        assert!(z.solve(&[1, 2]).is_err());
    }

    #[test]
    fn inverse_over_rationals() {
        let q = Rationals;
        let m = Matrix::from_i64_rows(q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_i64_rows(q, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 2, 3, 4], &[0, 1, 3, 5]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(f.vis_zero(&m.mul_vec(&v)));
        }
    }
}
