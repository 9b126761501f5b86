//! Operator machinery: L, R, V, U, T, the skewer map and the ε/δ transforms.

use super::algebra::Algebra;
use crate::exactlin::{Field, Matrix};

impl<F: Field> Algebra<F> {
    fn columns_to_matrix(&self, cols: Vec<Vec<F::Elem>>) -> Matrix<F> {
        Matrix::from_columns(self.field(), self.dim(), &cols).expect("square")
    }

    /// Matrix of a linear map given by its action on basis vectors.
    pub fn operator_from_fn(&self, g: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Matrix<F> {
        let cols = (0..self.dim()).map(|i| g(&self.basis_vector(i))).collect();
        self.columns_to_matrix(cols)
    }

    pub fn left(&self, x: &[F::Elem]) -> Matrix<F> {
        self.operator_from_fn(|z| self.mul(x, z))
    }

    pub fn right(&self, x: &[F::Elem]) -> Matrix<F> {
        self.operator_from_fn(|z| self.mul(z, x))
    }

    /// ψ(x,y) = x·ȳ − y·x̄
    pub fn psi(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        f.vsub(&self.mul(x, &self.involute(y)), &self.mul(y, &self.involute(x)))
    }

    /// V_{x,y}(z) = (x ȳ) z + (z ȳ) x − (z x̄) y
    pub fn v_apply(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let yb = self.involute(y);
        let xb = self.involute(x);
        let t1 = self.mul(&self.mul(x, &yb), z);
        let t2 = self.mul(&self.mul(z, &yb), x);
        let t3 = self.mul(&self.mul(z, &xb), y);
        f.vsub(&f.vadd(&t1, &t2), &t3)
    }

    pub fn v_op(&self, x: &[F::Elem], y: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let yb = self.involute(y);
        let xb = self.involute(x);
        let xyb = self.mul(x, &yb);
        self.operator_from_fn(|z| {
            let t1 = self.mul(&xyb, z);
            let t2 = self.mul(&self.mul(z, &yb), x);
            let t3 = self.mul(&self.mul(z, &xb), y);
            f.vsub(&f.vadd(&t1, &t2), &t3)
        })
    }

    /// U_x(y) = V_{x,y}(x)
    pub fn u_op(&self, x: &[F::Elem]) -> Matrix<F> {
        self.operator_from_fn(|y| self.v_apply(x, y, x))
    }

    /// T_x = V_{x,1}
    pub fn t_op(&self, x: &[F::Elem]) -> Matrix<F> {
        self.v_op(x, self.unit())
    }

    /// All V_{e_i,e_j}, indexed by i*dim + j.
    pub fn v_basis_ops(&self) -> Vec<Matrix<F>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.v_op(&self.basis_vector(i), &self.basis_vector(j)));
            }
        }
        out
    }

    /// A^ε = A − L_{A(1) + conj(A(1))}
    pub fn epsilon(&self, a: &Matrix<F>) -> Matrix<F> {
        let f = self.field();
        let a1 = a.mul_vec(self.unit());
        let w = f.vadd(&a1, &self.involute(&a1));
        a.sub(&self.left(&w))
    }

    /// A^δ = A + R_{conj(A(1))}, meaningful on skew elements.
    pub fn delta(&self, a: &Matrix<F>) -> Matrix<F> {
        let a1 = a.mul_vec(self.unit());
        a.add(&self.right(&self.involute(&a1)))
    }

    /// (A^ε, A^δ)
    pub fn epsilon_delta(&self, a: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
        (self.epsilon(a), self.delta(a))
    }

    /// A^{εδ} = (A^ε)^δ
    pub fn epsilon_then_delta(&self, a: &Matrix<F>) -> Matrix<F> {
        self.delta(&self.epsilon(a))
    }

    /// The conjugate inverse û with V_{u,û} = id (and V_{û,u} = id), if it exists.
    pub fn conjugate_inverse(&self, u: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.field();
        let n = self.dim();
        // w ↦ V_{u,w} is linear; its matrix has the flattened V_{u,e_j} as columns.
        let cols: Vec<Vec<F::Elem>> =
            (0..n).map(|j| self.v_op(u, &self.basis_vector(j)).data().to_vec()).collect();
        let m = Matrix::from_columns(f, n * n, &cols).expect("consistent");
        let id = Matrix::identity(f, n);
        let w = m.solve(id.data()).expect("consistent dims")?;
        if !self.v_op(&w, u).is_identity() {
            return None;
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use crate::exactlin::{Field, PrimeField};
    use crate::structalg::instances;

    #[test]
    fn exchange_psi_and_products() {
        let f = PrimeField::new(5).unwrap();
        let a = instances::exchange_field(f);
        assert_eq!(a.mul(&[1, 2], &[3, 4]), vec![3, 3]);
        assert_eq!(a.mul(&[1, 0], &[0, 1]), vec![0, 0]);
        assert_eq!(a.involute(&[1, 2]), vec![2, 1]);
        assert_eq!(a.psi(&[1, 0], &[0, 1]), vec![1, 4]);
        let h = f.half();
        assert_eq!(a.split_hs(&[1, 0]), (vec![h, h], vec![h, f.neg(&h)]));
    }

    #[test]
    fn exchange_conjugate_inverse() {
        let f = PrimeField::new(5).unwrap();
        let a = instances::exchange_field(f);
        for e in 1..5u32 {
            for g in 1..5u32 {
                let inv = a.conjugate_inverse(&[e, g]).unwrap();
                assert_eq!(inv, vec![f.inv(&g).unwrap(), f.inv(&e).unwrap()]);
            }
        }
        assert_eq!(a.conjugate_inverse(&[1, 0]), None);
        assert_eq!(a.conjugate_inverse(&[0, 3]), None);
        assert_eq!(a.conjugate_inverse(&[1, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn v_unit_is_identity() {
        let f = PrimeField::new(5).unwrap();
        let a = instances::exchange_field(f);
        assert!(a.v_op(a.unit(), a.unit()).is_identity());
    }
}
