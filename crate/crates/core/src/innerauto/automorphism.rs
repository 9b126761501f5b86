use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::tkk::{LieElement, TkkAlgebra};

/// A verified automorphism of K(A) with the generator word that produced it.
///
/// Products follow the convention `f·g = g∘f`: [`Automorphism::then`] applies `self` first.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism<F: Field> {
    matrix: Matrix<F>,
    word: Vec<String>,
}

impl<F: Field> fmt::Debug for Automorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism[{}]", self.word_string())
    }
}

/// First basis pair (i, j) with φ[e_i,e_j] ≠ [φe_i, φe_j], if any.
pub fn bracket_violation<F: Field>(l: &TkkAlgebra<F>, m: &Matrix<F>) -> Option<(usize, usize)> {
    let n = l.total_dim();
    let images: Vec<Vec<F::Elem>> = (0..n).map(|i| m.column(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if m.mul_vec(l.basis_bracket(i, j)) != l.bracket(&images[i], &images[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

impl<F: Field> Automorphism<F> {
    /// Wraps a matrix after checking invertibility and bracket preservation on all basis pairs.
    pub fn new(l: &TkkAlgebra<F>, matrix: Matrix<F>, word: Vec<String>) -> Result<Self> {
        let n = l.total_dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.rows() });
        }
        if matrix.rank() != n {
            return Err(Error::Verification(format!("{} is not invertible", word.join("·"))));
        }
        if let Some((i, j)) = bracket_violation(l, &matrix) {
            return Err(Error::Verification(format!(
                "{} does not preserve [{}, {}]",
                word.join("·"),
                l.labels()[i],
                l.labels()[j]
            )));
        }
        Ok(Automorphism { matrix, word })
    }

    pub fn identity(l: &TkkAlgebra<F>) -> Self {
        Automorphism { matrix: Matrix::identity(l.field(), l.total_dim()), word: Vec::new() }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn word(&self) -> &[String] {
        &self.word
    }
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "id".into()
        } else {
            self.word.join("·")
        }
    }
    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, x: &[F::Elem]) -> LieElement<F> {
        self.matrix.mul_vec(x)
    }

    pub fn apply_subspace(&self, s: &Subspace<F>) -> Subspace<F> {
        s.map(&self.matrix)
    }

    /// The product `self·other`, i.e. the map `other ∘ self`. Closed under composition,
    /// so no re-verification is needed.
    pub fn then(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Automorphism { matrix: other.matrix.mul(&self.matrix), word }
    }

    pub fn inverse(&self) -> Self {
        let matrix = self.matrix.inverse().expect("automorphisms are invertible");
        let word = self.word.iter().rev().map(|w| format!("{w}^-1")).collect();
        Automorphism { matrix, word }
    }

    /// `[f, g] = f⁻¹ g⁻¹ f g`.
    pub fn commutator(f: &Self, g: &Self) -> Self {
        let c = f.inverse().then(&g.inverse()).then(f).then(g);
        Automorphism { matrix: c.matrix, word: vec![format!("[{}, {}]", f.word_string(), g.word_string())] }
    }

    pub fn with_word(mut self, word: Vec<String>) -> Self {
        self.word = word;
        self
    }
}

/// exp(ad z), exact, with the nilpotency index detected by repeated multiplication.
pub fn exp_ad<F: Field>(l: &TkkAlgebra<F>, z: &[F::Elem], label: impl Into<String>) -> Result<Automorphism<F>> {
    let f = l.field();
    let n = l.total_dim();
    let ad = l.ad(z);
    let mut powers = vec![Matrix::identity(f, n)];
    loop {
        let next = powers.last().expect("nonempty").mul(&ad);
        if next.is_zero() {
            break;
        }
        if powers.len() > n {
            return Err(Error::NotNilpotent(n));
        }
        powers.push(next);
    }
    let mut sum = Matrix::zeros(f, n, n);
    let mut fact = f.one();
    for (k, p) in powers.iter().enumerate() {
        if k > 0 {
            fact = f.mul(&fact, &f.from_i64(k as i64));
        }
        let inv = f.inv(&fact).ok_or(Error::FactorialNotInvertible(k))?;
        sum.axpy(&inv, p);
    }
    Automorphism::new(l, sum, vec![label.into()])
}

/// e_σ(a, s) = exp ad(a_σ + s_σ) for σ = ±1; `s` must be skew.
pub fn e_sigma<F: Field>(l: &TkkAlgebra<F>, a: &[F::Elem], s: &[F::Elem], sigma: i32) -> Result<Automorphism<F>> {
    let f = l.field();
    let z = f.vadd(&l.a_sigma(a, sigma), &l.s_sigma(s, sigma)?);
    let alg = l.algebra();
    let sign = if sigma > 0 { '+' } else { '-' };
    exp_ad(l, &z, format!("e{sign}({}; {})", alg.format(a), alg.format(s)))
}

/// exp ad T_x, with T_x = V_{x,1} placed in grade 0.
pub fn exp_t<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem]) -> Result<Automorphism<F>> {
    let alg = l.algebra();
    let z = l.inst(&alg.t_op(x))?;
    exp_ad(l, &z, format!("expT({})", alg.format(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::structalg::instances;

    #[test]
    fn identity_and_inverse() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let e0 = e_sigma(&l, &[0, 0], &[0, 0], 1).unwrap();
        assert!(e0.is_identity());
        let e = e_sigma(&l, &[1, 2], &[1, 4], -1).unwrap();
        assert!(e.then(&e.inverse()).is_identity());
        let einv = e_sigma(&l, &[4, 3], &[4, 1], -1).unwrap();
        assert_eq!(e.inverse().matrix(), einv.matrix());
    }

    #[test]
    fn non_nilpotent_rejected() {
        let f = PrimeField::new(5).unwrap();
        let a = instances::exchange_field(f);
        let l = TkkAlgebra::build(&a).unwrap();
        let id = l.inst(&Matrix::identity(f, 2)).unwrap();
        assert!(matches!(exp_ad(&l, &id, "id"), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn splus_exponential_is_e_plus() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let s = [1, 4];
        let a = exp_ad(&l, &l.s_plus(&s).unwrap(), "z").unwrap();
        assert_eq!(a.matrix(), e_sigma(&l, &[0, 0], &s, 1).unwrap().matrix());
    }
}
