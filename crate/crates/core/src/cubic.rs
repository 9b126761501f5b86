//! Cubic norm structures (N, T, ♯, ×) used to build the skew-dimension-one matrix algebras.

use crate::error::{Error, Result};
use crate::exactlin::{enumerate_vectors, Field, Matrix};
use crate::structalg::instances::poly_mul_mod;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct CubicNormStructure<F: Field> {
    field: F,
    dim: usize,
    /// symmetric trilinear form with N(x) = Σ norm[i][j][k] x_i x_j x_k (flattened)
    norm: Vec<F::Elem>,
    /// Gram matrix of the trace form T
    trace: Matrix<F>,
    /// symmetric bilinear B with x♯ = B(x,x); sharp[i*dim + j] = B(e_i, e_j)
    sharp: Vec<Vec<F::Elem>>,
    basepoint: Vec<F::Elem>,
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubicOp {
    Norm,
    Trace,
    Sharp,
    Cross,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicValue<E> {
    Scalar(E),
    Vector(Vec<E>),
}

impl<F: Field> CubicNormStructure<F> {
    /// J = k with N(x) = x³, x♯ = x², T(x,y) = 3xy.
    pub fn rank1(field: F) -> Result<Self> {
        let j = CubicNormStructure {
            field,
            dim: 1,
            norm: vec![field.one()],
            trace: Matrix::from_rows(field, &[vec![field.from_i64(3)]])?,
            sharp: vec![vec![field.one()]],
            basepoint: vec![field.one()],
            name: "rank1".into(),
        };
        j.verify()?;
        Ok(j)
    }

    /// J = F[t]/(t³ + c₂t² + c₁t + c₀) with N the field norm, ♯ the adjoint, T(x,y) = Tr(xy).
    /// `modulus` = [c₀, c₁, c₂]. Only finite base fields are supported.
    pub fn cubic_field(field: F, modulus: &[F::Elem]) -> Result<Self> {
        if modulus.len() != 3 {
            return Err(Error::InvalidInstance("cubic field modulus needs 3 coefficients".into()));
        }
        let elems = field.elements().map_err(|_| {
            Error::InvalidInstance("cubic field extensions are only supported over finite fields".into())
        })?;
        let eval = |x: &F::Elem| {
            let mut acc = field.one();
            for c in modulus.iter().rev() {
                acc = field.add(&field.mul(&acc, x), c);
            }
            acc
        };
        if let Some(r) = elems.iter().find(|x| field.is_zero(&eval(x))) {
            return Err(Error::InvalidInstance(format!(
                "cubic modulus is reducible (root {})",
                field.format(r)
            )));
        }
        let mul = |x: &[F::Elem], y: &[F::Elem]| poly_mul_mod(field, x, y, modulus);
        let left = |x: &[F::Elem]| {
            let cols: Vec<Vec<F::Elem>> = (0..3).map(|i| mul(x, &field.unit_vec(3, i))).collect();
            Matrix::from_columns(field, 3, &cols).expect("3x3")
        };
        let norm_fn = |x: &[F::Elem]| det3(field, &left(x));
        let sharp_fn = |x: &[F::Elem]| {
            let adj = adjugate3(field, &left(x));
            adj.mul_vec(&field.unit_vec(3, 0))
        };
        let trace_fn = |x: &[F::Elem], y: &[F::Elem]| {
            let l = left(&mul(x, y));
            (0..3).fold(field.zero(), |acc, i| field.add(&acc, l.get(i, i)))
        };
        let mut trace = Matrix::zeros(field, 3, 3);
        for i in 0..3 {
            for k in 0..3 {
                trace.set(i, k, trace_fn(&field.unit_vec(3, i), &field.unit_vec(3, k)));
            }
        }
        let j = CubicNormStructure {
            field,
            dim: 3,
            norm: polarize_cubic(field, 3, &norm_fn),
            trace,
            sharp: polarize_quadratic(field, 3, &sharp_fn),
            basepoint: field.unit_vec(3, 0),
            name: "cubic_field".into(),
        };
        j.verify()?;
        Ok(j)
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basepoint(&self) -> &[F::Elem] {
        &self.basepoint
    }
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field;
        let n = self.dim;
        let mut acc = f.zero();
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&x[j]) {
                    continue;
                }
                let xij = f.mul(&x[i], &x[j]);
                for k in 0..n {
                    let c = &self.norm[(i * n + j) * n + k];
                    if !f.is_zero(c) {
                        acc = f.add(&acc, &f.mul(c, &f.mul(&xij, &x[k])));
                    }
                }
            }
        }
        acc
    }

    pub fn trace(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = self.field;
        let ty = self.trace.mul_vec(y);
        x.iter().zip(&ty).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    fn bilinear_sharp(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let n = self.dim;
        let mut out = f.vzero(n);
        for i in 0..n {
            for j in 0..n {
                let c = f.mul(&x[i], &y[j]);
                f.vaxpy(&mut out, &c, &self.sharp[i * n + j]);
            }
        }
        out
    }

    pub fn sharp(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.bilinear_sharp(x, x)
    }

    /// x × y = (x+y)♯ − x♯ − y♯
    pub fn cross(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        f.vscale(&f.from_i64(2), &self.bilinear_sharp(x, y))
    }

    /// Evaluate one of the four maps with arity checking.
    pub fn eval(&self, op: CubicOp, args: &[&[F::Elem]]) -> Result<CubicValue<F::Elem>> {
        let need = match op {
            CubicOp::Norm | CubicOp::Sharp => 1,
            CubicOp::Trace | CubicOp::Cross => 2,
        };
        if args.len() != need {
            return Err(Error::Precondition(format!("{op:?} takes {need} arguments, got {}", args.len())));
        }
        for a in args {
            if a.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: a.len() });
            }
        }
        Ok(match op {
            CubicOp::Norm => CubicValue::Scalar(self.norm(args[0])),
            CubicOp::Trace => CubicValue::Scalar(self.trace(args[0], args[1])),
            CubicOp::Sharp => CubicValue::Vector(self.sharp(args[0])),
            CubicOp::Cross => CubicValue::Vector(self.cross(args[0], args[1])),
        })
    }

    fn sample_points(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        match f.size() {
            Some(q) if q.pow(self.dim as u32) <= 125 => {
                enumerate_vectors(f, self.dim).expect("finite").collect()
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                (0..64).map(|_| f.vrandom(self.dim, &mut rng)).collect()
            }
        }
    }

    /// Checks the basepoint axioms, the adjoint identity, the trace identity and the
    /// linearization of ♯ (exhaustively for small finite J, otherwise on samples).
    pub fn verify(&self) -> Result<()> {
        let f = self.field;
        let b = &self.basepoint;
        if !f.is_one(&self.norm(b)) {
            return Err(Error::InvalidInstance("N(1) != 1".into()));
        }
        if self.sharp(b) != *b {
            return Err(Error::InvalidInstance("1♯ != 1".into()));
        }
        let pts = self.sample_points();
        let three = f.from_i64(3);
        for (idx, x) in pts.iter().enumerate() {
            let nx = self.norm(x);
            let xs = self.sharp(x);
            if self.sharp(&xs) != f.vscale(&nx, x) {
                return Err(Error::InvalidInstance(format!("x♯♯ != N(x)x at x = {}", f.vformat(x))));
            }
            if self.trace(&xs, x) != f.mul(&three, &nx) {
                return Err(Error::InvalidInstance(format!("T(x♯,x) != 3N(x) at x = {}", f.vformat(x))));
            }
            let y = &pts[(idx * 7 + 3) % pts.len()];
            let lin = f.vsub(&f.vsub(&self.sharp(&f.vadd(x, y)), &xs), &self.sharp(y));
            if self.cross(x, y) != lin {
                return Err(Error::InvalidInstance(format!(
                    "cross product is not the linearization of ♯ at ({}, {})",
                    f.vformat(x),
                    f.vformat(y)
                )));
            }
        }
        Ok(())
    }

    /// N(x) = 0 only for x = 0, exhaustively (finite fields only).
    pub fn is_anisotropic(&self) -> Result<bool> {
        let f = self.field;
        for x in enumerate_vectors(f, self.dim)? {
            if !f.vis_zero(&x) && f.is_zero(&self.norm(&x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn det3<F: Field>(f: F, m: &Matrix<F>) -> F::Elem {
    let g = |r, c| m.get(r, c).clone();
    let minor = |r0, c0, r1, c1| f.sub(&f.mul(&g(r0, c0), &g(r1, c1)), &f.mul(&g(r0, c1), &g(r1, c0)));
    let t0 = f.mul(&g(0, 0), &minor(1, 1, 2, 2));
    let t1 = f.mul(&g(0, 1), &minor(1, 0, 2, 2));
    let t2 = f.mul(&g(0, 2), &minor(1, 0, 2, 1));
    f.add(&f.sub(&t0, &t1), &t2)
}

fn adjugate3<F: Field>(f: F, m: &Matrix<F>) -> Matrix<F> {
    let mut adj = Matrix::zeros(f, 3, 3);
    for i in 0..3 {
        for j in 0..3 {
            // cofactor C_ij, adj = C^T
            let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            let d = f.sub(
                &f.mul(m.get(rows[0], cols[0]), m.get(rows[1], cols[1])),
                &f.mul(m.get(rows[0], cols[1]), m.get(rows[1], cols[0])),
            );
            let c = if (i + j) % 2 == 0 { d } else { f.neg(&d) };
            adj.set(j, i, c);
        }
    }
    adj
}

/// Symmetric trilinear coefficients of a cubic form from its values.
fn polarize_cubic<F: Field>(f: F, n: usize, form: &dyn Fn(&[F::Elem]) -> F::Elem) -> Vec<F::Elem> {
    let sixth = f.inv(&f.from_i64(6)).expect("char not 2 or 3");
    let e = |i: usize| f.unit_vec(n, i);
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (e(i), e(j), e(k));
                let ab = f.vadd(&a, &b);
                let ac = f.vadd(&a, &c);
                let bc = f.vadd(&b, &c);
                let abc = f.vadd(&ab, &c);
                let mut v = form(&abc);
                for t in [&ab, &ac, &bc] {
                    v = f.sub(&v, &form(t));
                }
                for t in [&a, &b, &c] {
                    v = f.add(&v, &form(t));
                }
                out.push(f.mul(&v, &sixth));
            }
        }
    }
    out
}

/// Symmetric bilinear components B(e_i, e_j) of a quadratic map.
fn polarize_quadratic<F: Field>(
    f: F,
    n: usize,
    q: &dyn Fn(&[F::Elem]) -> Vec<F::Elem>,
) -> Vec<Vec<F::Elem>> {
    let half = f.half();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (f.unit_vec(n, i), f.unit_vec(n, j));
            let v = f.vsub(&f.vsub(&q(&f.vadd(&a, &b)), &q(&a)), &q(&b));
            out.push(f.vscale(&half, &v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;

    #[test]
    fn rank1_values() {
        let f = PrimeField::new(5).unwrap();
        let j = CubicNormStructure::rank1(f).unwrap();
        assert_eq!(j.norm(&[2]), 3);
        assert_eq!(j.sharp(&[2]), vec![4]);
        assert_eq!(j.trace(&[2], &[3]), 3);
        assert_eq!(j.norm(&[1]), 1);
        assert_eq!(j.sharp(&[1]), vec![1]);
        assert_eq!(j.cross(&[2], &[3]), vec![2]);
        assert_eq!(j.norm(&[0]), 0);
        assert_eq!(j.sharp(&[0]), vec![0]);
        for x in 0..5u32 {
            assert_eq!(j.cross(&[x], &[x]), f.vscale(&2, &j.sharp(&[x])));
        }
        assert!(j.is_anisotropic().unwrap());
    }

    #[test]
    fn cubic_field_f125() {
        let f = PrimeField::new(5).unwrap();
        // t^3 + t + 1
        let j = CubicNormStructure::cubic_field(f, &[1, 1, 0]).unwrap();
        assert_eq!(j.norm(j.basepoint()), 1);
        assert!(j.is_anisotropic().unwrap());
        // the norm of a root of a monic cubic is minus its constant term
        assert_eq!(j.norm(&[0, 1, 0]), 4);
    }

    #[test]
    fn reducible_cubic_rejected() {
        let f = PrimeField::new(5).unwrap();
        // t^3 - 2 has the root 3 since every element of F_5 is a cube
        assert!(CubicNormStructure::cubic_field(f, &[3, 0, 0]).is_err());
    }

    #[test]
    fn eval_arity() {
        let f = PrimeField::new(5).unwrap();
        let j = CubicNormStructure::rank1(f).unwrap();
        assert!(j.eval(CubicOp::Norm, &[&[1], &[2]]).is_err());
        assert_eq!(j.eval(CubicOp::Cross, &[&[2], &[3]]).unwrap(), CubicValue::Vector(vec![2]));
    }
}
