//! The concrete instance families: exchange algebras, Cayley–Dickson composition algebras,
//! Jordan algebras (trivial involution) and the matrix algebras M(J, η).

use super::algebra::Algebra;
use crate::cubic::CubicNormStructure;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// Structure constants of the bilinear map `prod` on basis vectors.
fn table_from<F: Field>(f: F, n: usize, prod: impl Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>) -> Vec<F::Elem> {
    let mut t = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            t.extend(prod(&f.unit_vec(n, i), &f.unit_vec(n, j)));
        }
    }
    t
}

fn matrix_from_map<F: Field>(f: F, n: usize, g: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Matrix<F> {
    let cols: Vec<Vec<F::Elem>> = (0..n).map(|i| g(&f.unit_vec(n, i))).collect();
    Matrix::from_columns(f, n, &cols).expect("square")
}

/// The base field as a one-dimensional algebra with trivial involution.
pub fn ground_field<F: Field>(f: F) -> Algebra<F> {
    Algebra::new(f, 1, vec![f.one()], Matrix::identity(f, 1), vec![f.one()], "field")
        .expect("the field is an algebra")
        .with_labels(vec!["1".into()])
}

/// One Cayley–Dickson doubling: (a,b)(c,d) = (ac + γ d̄b, da + bc̄), conj(a,b) = (ā, −b).
pub fn cayley_dickson_double<F: Field>(d: &Algebra<F>, gamma: &F::Elem) -> Result<Algebra<F>> {
    let f = d.field();
    let m = d.dim();
    let split = |x: &[F::Elem]| (x[..m].to_vec(), x[m..].to_vec());
    let prod = |x: &[F::Elem], y: &[F::Elem]| {
        let (a, b) = split(x);
        let (c, dd) = split(y);
        let first = f.vadd(&d.mul(&a, &c), &f.vscale(gamma, &d.mul(&d.involute(&dd), &b)));
        let second = f.vadd(&d.mul(&dd, &a), &d.mul(&b, &d.involute(&c)));
        [first, second].concat()
    };
    let table = table_from(f, 2 * m, prod);
    let inv = matrix_from_map(f, 2 * m, |x| {
        let (a, b) = split(x);
        [d.involute(&a), f.vneg(&b)].concat()
    });
    let mut unit = d.unit().to_vec();
    unit.extend(f.vzero(m));
    let labels: Vec<String> = (0..2 * m).map(|i| format!("u{i}")).collect();
    Ok(Algebra::new(f, 2 * m, table, inv, unit, "cayley-dickson")?.with_labels(labels))
}

/// Composition algebra from Cayley–Dickson parameters (1 → quadratic, 2 → quaternion,
/// 3 → octonion), with its standard involution.
pub fn cayley_dickson<F: Field>(f: F, params: &[F::Elem]) -> Result<Algebra<F>> {
    if params.is_empty() || params.len() > 3 {
        return Err(Error::InvalidInstance("Cayley-Dickson needs 1 to 3 parameters".into()));
    }
    if params.iter().any(|p| f.is_zero(p)) {
        return Err(Error::InvalidInstance("Cayley-Dickson parameters must be nonzero".into()));
    }
    let mut a = ground_field(f);
    for g in params {
        a = cayley_dickson_double(&a, g)?;
    }
    let labels: Vec<String> = match a.dim() {
        2 => vec!["1".into(), "i".into()],
        4 => ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect(),
        n => (0..n).map(|i| if i == 0 { "1".into() } else { format!("o{i}") }).collect(),
    };
    Ok(a.with_labels(labels))
}

/// A composition algebra with its standard involution, viewed as a structurable algebra.
pub fn hurwitz_with_involution<F: Field>(f: F, params: &[F::Elem]) -> Result<Algebra<F>> {
    let a = cayley_dickson(f, params)?;
    let labels = a.labels().to_vec();
    Ok(Algebra::new(
        f,
        a.dim(),
        a.table().to_vec(),
        a.involution_matrix().clone(),
        a.unit().to_vec(),
        "hurwitz",
    )?
    .with_labels(labels))
}

/// The exchange algebra D ⊕ D with (a,b)(c,d) = (ac, db) and involution (a,b) ↦ (b,a).
/// The involution of `d` itself is not used.
pub fn exchange<F: Field>(d: &Algebra<F>) -> Result<Algebra<F>> {
    let f = d.field();
    let m = d.dim();
    let prod = |x: &[F::Elem], y: &[F::Elem]| {
        let (a, b) = (&x[..m], &x[m..]);
        let (c, dd) = (&y[..m], &y[m..]);
        [d.mul(a, c), d.mul(dd, b)].concat()
    };
    let table = table_from(f, 2 * m, prod);
    let inv = matrix_from_map(f, 2 * m, |x| [x[m..].to_vec(), x[..m].to_vec()].concat());
    let unit = [d.unit().to_vec(), d.unit().to_vec()].concat();
    let labels: Vec<String> = d
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(d.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    Ok(Algebra::new(f, 2 * m, table, inv, unit, "exchange")?.with_labels(labels))
}

/// The exchange algebra k ⊕ k over the base field.
pub fn exchange_field<F: Field>(f: F) -> Algebra<F> {
    exchange(&ground_field(f)).expect("k+k is an algebra")
}

/// Coordinates of M(J,η): k1, j1 (dim J), j2 (dim J), k2.
#[derive(Clone, Copy, Debug)]
pub struct MatrixLayout {
    pub jdim: usize,
}

impl MatrixLayout {
    pub fn dim(&self) -> usize {
        2 + 2 * self.jdim
    }
    pub fn k1(&self) -> usize {
        0
    }
    pub fn j1(&self, i: usize) -> usize {
        1 + i
    }
    pub fn j2(&self, i: usize) -> usize {
        1 + self.jdim + i
    }
    pub fn k2(&self) -> usize {
        1 + 2 * self.jdim
    }

    /// Assemble [[k1, j1],[j2, k2]] into algebra coordinates.
    pub fn assemble<E: Clone>(&self, k1: E, j1: &[E], j2: &[E], k2: E) -> Vec<E> {
        let mut v = Vec::with_capacity(self.dim());
        v.push(k1);
        v.extend(j1.iter().cloned());
        v.extend(j2.iter().cloned());
        v.push(k2);
        v
    }

    pub fn split<'a, E>(&self, x: &'a [E]) -> (&'a E, &'a [E], &'a [E], &'a E) {
        let n = self.jdim;
        (&x[0], &x[1..1 + n], &x[1 + n..1 + 2 * n], &x[1 + 2 * n])
    }
}

/// The structurable matrix algebra M(J, η).
pub fn matrix_structurable<F: Field>(j: &CubicNormStructure<F>, eta: &F::Elem) -> Result<Algebra<F>> {
    let f = j.field();
    if j.dim() == 0 {
        return Err(Error::InvalidInstance("J = 0 is not supported (J must be division)".into()));
    }
    if f.is_zero(eta) {
        return Err(Error::InvalidInstance("eta must be nonzero".into()));
    }
    let lay = MatrixLayout { jdim: j.dim() };
    let prod = |x: &[F::Elem], y: &[F::Elem]| {
        let (k1, j1, j2, k2) = lay.split(x);
        let (l1, i1, i2, l2) = lay.split(y);
        let a11 = f.add(&f.mul(k1, l1), &f.mul(eta, &j.trace(j1, i2)));
        let a12 = f.vadd(
            &f.vadd(&f.vscale(k1, i1), &f.vscale(l2, j1)),
            &f.vscale(eta, &j.cross(j2, i2)),
        );
        let a21 = f.vadd(&f.vadd(&f.vscale(l1, j2), &f.vscale(k2, i2)), &j.cross(j1, i1));
        let a22 = f.add(&f.mul(k2, l2), &f.mul(eta, &j.trace(j2, i1)));
        lay.assemble(a11, &a12, &a21, a22)
    };
    let n = lay.dim();
    let table = table_from(f, n, prod);
    let inv = matrix_from_map(f, n, |x| {
        let (k1, j1, j2, k2) = lay.split(x);
        lay.assemble(k2.clone(), j1, j2, k1.clone())
    });
    let unit = lay.assemble(f.one(), &f.vzero(j.dim()), &f.vzero(j.dim()), f.one());
    let mut labels = vec!["k1".to_string()];
    labels.extend((0..j.dim()).map(|i| format!("j1_{i}")));
    labels.extend((0..j.dim()).map(|i| format!("j2_{i}")));
    labels.push("k2".into());
    Ok(Algebra::new(f, n, table, inv, unit, "matrix")?.with_labels(labels))
}

/// The skew element s = diag(1, −1) of M(J, η).
pub fn matrix_skew_generator<F: Field>(a: &Algebra<F>, jdim: usize) -> Vec<F::Elem> {
    let f = a.field();
    let lay = MatrixLayout { jdim };
    lay.assemble(f.one(), &f.vzero(jdim), &f.vzero(jdim), f.neg(&f.one()))
}

/// A field extension F[t]/(m) of degree 2 or 3 viewed as a Jordan algebra over F
/// (trivial involution). `modulus` = [c₀, ..., c_{k−1}] of the monic m.
pub fn jordan_extension<F: Field>(f: F, modulus: &[F::Elem]) -> Result<Algebra<F>> {
    let k = modulus.len();
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidInstance("Jordan extension degree must be 2 or 3".into()));
    }
    let elems = f
        .elements()
        .map_err(|_| Error::InvalidInstance("field extensions need a finite base field".into()))?;
    let eval = |x: &F::Elem| modulus.iter().rev().fold(f.one(), |acc, c| f.add(&f.mul(&acc, x), c));
    if let Some(r) = elems.iter().find(|x| f.is_zero(&eval(x))) {
        return Err(Error::InvalidInstance(format!("modulus is reducible (root {})", f.format(r))));
    }
    let prod = |x: &[F::Elem], y: &[F::Elem]| poly_mul_mod(f, x, y, modulus);
    let table = table_from(f, k, prod);
    let labels = (0..k).map(|i| if i == 0 { "1".to_string() } else { format!("w^{i}") }).collect();
    Ok(Algebra::new(f, k, table, Matrix::identity(f, k), f.unit_vec(k, 0), "jordan")?.with_labels(labels))
}

/// The Jordan algebra of a quadratic form with basepoint e₀:
/// x∘y = ½(t(x)y + t(y)x − q(x,y)e₀), where q(x,y) = xᵀGy and t(x) = q(x,e₀).
/// Requires q(e₀) = 1, i.e. G[0][0] = 2.
pub fn jordan_quadratic<F: Field>(f: F, gram: &Matrix<F>) -> Result<Algebra<F>> {
    let n = gram.rows();
    if n == 0 || gram.cols() != n || *gram != gram.transpose() {
        return Err(Error::InvalidInstance("Gram matrix must be square and symmetric".into()));
    }
    if *gram.get(0, 0) != f.from_i64(2) {
        return Err(Error::InvalidInstance("basepoint must satisfy q(e0) = 1 (Gram[0][0] = 2)".into()));
    }
    if gram.rank() < n {
        return Err(Error::InvalidInstance("quadratic form is degenerate".into()));
    }
    let half = f.half();
    let e0 = f.unit_vec(n, 0);
    let q = |x: &[F::Elem], y: &[F::Elem]| {
        let gy = gram.mul_vec(y);
        x.iter().zip(&gy).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    };
    let prod = |x: &[F::Elem], y: &[F::Elem]| {
        let mut v = f.vscale(&q(x, &e0), y);
        f.vaxpy(&mut v, &q(y, &e0), x);
        f.vaxpy(&mut v, &f.neg(&q(x, y)), &e0);
        f.vscale(&half, &v)
    };
    let table = table_from(f, n, prod);
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Ok(Algebra::new(f, n, table, Matrix::identity(f, n), e0, "jordan")?.with_labels(labels))
}

pub(crate) fn poly_mul_mod<F: Field>(f: F, x: &[F::Elem], y: &[F::Elem], modulus: &[F::Elem]) -> Vec<F::Elem> {
    let k = modulus.len();
    let mut prod = f.vzero(2 * k - 1);
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = f.add(&prod[i + j], &f.mul(&x[i], &y[j]));
        }
    }
    for top in (k..2 * k - 1).rev() {
        let c = prod[top].clone();
        if f.is_zero(&c) {
            continue;
        }
        prod[top] = f.zero();
        for (j, m) in modulus.iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = f.sub(&prod[idx], &f.mul(&c, m));
        }
    }
    prod.truncate(k);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    #[test]
    fn matrix_algebra_skew_squares_to_one() {
        let f = PrimeField::new(5).unwrap();
        let j = CubicNormStructure::rank1(f).unwrap();
        let a = matrix_structurable(&j, &1).unwrap();
        let s = matrix_skew_generator(&a, 1);
        assert_eq!(a.mul(&s, &s), a.unit().to_vec());
        assert_eq!(a.skew().dim(), 1);
        assert!(a.skew().contains(&s));
    }

    #[test]
    fn jordan_f25_has_trivial_involution() {
        let f = PrimeField::new(5).unwrap();
        let a = jordan_extension(f, &[3, 0]).unwrap();
        assert!(a.involution_matrix().is_identity());
        assert_eq!(a.skew().dim(), 0);
        assert!(jordan_extension(f, &[4, 0]).is_err());
    }

    #[test]
    fn quaternion_basics() {
        let q = Rationals;
        let a = hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.skew().dim(), 3);
        let i = a.basis_vector(1);
        assert_eq!(a.mul(&i, &i), q.vneg(a.unit()));
    }

    #[test]
    fn quadratic_form_jordan_unit() {
        let f = PrimeField::new(7).unwrap();
        let g = Matrix::from_i64_rows(f, &[&[2, 0], &[0, 2]]);
        let a = jordan_quadratic(f, &g).unwrap();
        assert_eq!(a.dim(), 2);
    }
}
