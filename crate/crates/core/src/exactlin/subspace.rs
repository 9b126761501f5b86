use std::cmp::Ordering;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of F^n stored by its reduced row echelon basis, so equality is identity of data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Self::span(field, ambient, &(0..ambient).map(|i| field.unit_vec(ambient, i)).collect::<Vec<_>>())
            .expect("unit vectors")
    }

    pub fn span(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: v.len() });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let m = Matrix::from_rows(field, vectors)?;
        let (r, pivots) = m.rref_with_pivots();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { field, ambient, basis, pivots })
    }

    /// The line spanned by one vector.
    pub fn line(field: F, v: &[F::Elem]) -> Self {
        Self::span(field, v.len(), &[v.to_vec()]).expect("consistent length")
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            return Matrix::zeros(self.field, 0, self.ambient);
        }
        Matrix::from_rows(self.field, &self.basis).expect("rectangular")
    }

    /// Residual of `v` after eliminating against the basis; zero iff `v` lies in the subspace.
    pub fn residual(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !f.is_zero(&c) {
                f.vaxpy(&mut r, &f.neg(&c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.field.vis_zero(&self.residual(v))
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.field, self.ambient, &all)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, self.ambient));
        }
        let mut cols: Vec<Vec<F::Elem>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| f.vneg(v)));
        let m = Matrix::from_columns(f, self.ambient, &cols)?;
        let k = self.dim();
        let vecs: Vec<Vec<F::Elem>> = m
            .kernel()
            .into_iter()
            .map(|kv| {
                let mut x = f.vzero(self.ambient);
                for (c, b) in kv[..k].iter().zip(&self.basis) {
                    f.vaxpy(&mut x, c, b);
                }
                x
            })
            .collect();
        Self::span(f, self.ambient, &vecs)
    }

    /// Image under a linear map given by its matrix.
    pub fn map(&self, m: &Matrix<F>) -> Self {
        let imgs: Vec<Vec<F::Elem>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Self::span(self.field, m.rows(), &imgs).expect("consistent dims")
    }

    /// Total order used for canonical sorting: by dimension, then basis data.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

/// Lazily enumerates all vectors of F^dim in lexicographic coordinate order.
pub struct VectorIter<F: Field> {
    field: F,
    dim: usize,
    q: u64,
    digits: Vec<u64>,
    done: bool,
}

impl<F: Field> Iterator for VectorIter<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.digits.iter().map(|&d| self.field.element(d)).collect();
        // increment, last coordinate least significant
        let mut i = self.dim;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_vectors<F: Field>(field: F, dim: usize) -> Result<VectorIter<F>> {
    let q = field.size().ok_or(Error::InfiniteField)?;
    Ok(VectorIter { field, dim, q, digits: vec![0; dim], done: false })
}

/// All 1-dimensional subspaces of F^dim, each represented by its normalized spanning vector.
pub fn projective_points<F: Field>(field: F, dim: usize) -> Result<Vec<Vec<F::Elem>>> {
    let mut out = Vec::new();
    for v in enumerate_vectors(field, dim)? {
        if let Some(lead) = v.iter().position(|x| !field.is_zero(x)) {
            if field.is_one(&v[lead]) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn e(f: PrimeField, n: usize, i: usize) -> Vec<u32> {
        f.unit_vec(n, i)
    }

    #[test]
    fn coordinate_subspaces() {
        let f = PrimeField::new(5).unwrap();
        let u = Subspace::span(f, 3, &[e(f, 3, 0), e(f, 3, 1)]).unwrap();
        let v = Subspace::span(f, 3, &[e(f, 3, 1), e(f, 3, 2)]).unwrap();
        assert_eq!(u.intersection(&v).unwrap(), Subspace::span(f, 3, &[e(f, 3, 1)]).unwrap());
        assert_eq!(u.sum(&u).unwrap(), u);
        let l = Subspace::span(f, 3, &[e(f, 3, 0)]).unwrap();
        assert!(!l.contains(&e(f, 3, 1)));
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(f, 3));
    }

    #[test]
    fn enumeration_examples() {
        let f = PrimeField::new(5).unwrap();
        let one: Vec<_> = enumerate_vectors(f, 1).unwrap().collect();
        assert_eq!(one, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        let two: Vec<_> = enumerate_vectors(f, 2).unwrap().collect();
        assert_eq!(two.len(), 25);
        assert_eq!(two[0], vec![0, 0]);
        assert_eq!(two[24], vec![4, 4]);
        assert_eq!(enumerate_vectors(Rationals, 2).err(), Some(Error::InfiniteField));
        assert_eq!(projective_points(f, 3).unwrap().len(), 31);
    }

    fn arb_rows() -> impl Strategy<Value = Vec<Vec<u32>>> {
        proptest::collection::vec(proptest::collection::vec(0u32..7, 5), 0..5)
    }

    proptest! {
        #[test]
        fn rref_idempotent(rows in proptest::collection::vec(proptest::collection::vec(0u32..7, 5), 1..6)) {
            let f = PrimeField::new(7).unwrap();
            let m = Matrix::from_rows(f, &rows).unwrap();
            let r = m.rref();
            prop_assert_eq!(r.rref(), r);
        }

        #[test]
        fn dimension_formula(a in arb_rows(), b in arb_rows()) {
            let f = PrimeField::new(7).unwrap();
            let u = Subspace::span(f, 5, &a).unwrap();
            let v = Subspace::span(f, 5, &b).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersection(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        }

        #[test]
        fn span_round_trip(a in arb_rows()) {
            let f = PrimeField::new(7).unwrap();
            let u = Subspace::span(f, 5, &a).unwrap();
            let again = Subspace::span(f, 5, u.basis()).unwrap();
            prop_assert_eq!(&again, &u);
            for v in &a {
                prop_assert!(u.contains(v));
            }
        }
    }
}
