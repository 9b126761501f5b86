//! The 5-graded Lie algebra K(A) = S₋ ⊕ A₋ ⊕ Inst(A) ⊕ A₊ ⊕ S₊ with a dense bracket table.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::report::CheckReport;
use crate::structalg::Algebra;

/// A coordinate vector in the graded basis of K(A).
pub type LieElement<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeDims {
    pub skew: usize,
    pub alg: usize,
    pub inst: usize,
}

impl GradeDims {
    pub fn total(&self) -> usize {
        2 * self.skew + 2 * self.alg + self.inst
    }

    /// (dim S₋, dim A₋, dim Inst, dim A₊, dim S₊)
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.skew, self.alg, self.inst, self.alg, self.skew)
    }
}

/// The five homogeneous components of an element; skew parts are in algebra coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components<F: Field> {
    pub s_minus: Vec<F::Elem>,
    pub a_minus: Vec<F::Elem>,
    pub inst: Matrix<F>,
    pub a_plus: Vec<F::Elem>,
    pub s_plus: Vec<F::Elem>,
}

#[derive(Clone, Debug)]
pub struct TkkAlgebra<F: Field> {
    alg: Algebra<F>,
    inst_space: Subspace<F>,
    inst_basis: Vec<Matrix<F>>,
    dims: GradeDims,
    table: Vec<Vec<F::Elem>>,
    ad: Vec<Matrix<F>>,
    labels: Vec<String>,
}

impl<F: Field> TkkAlgebra<F> {
    /// Builds K(A) and verifies antisymmetry, the grading and the Jacobi identity.
    pub fn build(alg: &Algebra<F>) -> Result<Self> {
        let l = Self::build_unchecked(alg)?;
        for report in [l.check_antisymmetry(), l.check_grading(), l.check_jacobi()] {
            if !report.passed() {
                return Err(Error::Verification(report.to_string()));
            }
        }
        Ok(l)
    }

    /// Builds the bracket table without the Lie-algebra verification.
    pub fn build_unchecked(alg: &Algebra<F>) -> Result<Self> {
        let f = alg.field();
        let n = alg.dim();
        let flat: Vec<Vec<F::Elem>> = alg.v_basis_ops().iter().map(|m| m.data().to_vec()).collect();
        let inst_space = Subspace::span(f, n * n, &flat)?;
        let inst_basis: Vec<Matrix<F>> = inst_space
            .basis()
            .iter()
            .map(|row| Matrix::from_vec(f, n, n, row.clone()).expect("square"))
            .collect();
        let dims = GradeDims { skew: alg.skew().dim(), alg: n, inst: inst_basis.len() };
        let total = dims.total();
        let mut labels = Vec::with_capacity(total);
        labels.extend((0..dims.skew).map(|i| format!("s-{i}")));
        labels.extend(alg.labels().iter().map(|l| format!("{l}-")));
        labels.extend((0..dims.inst).map(|i| format!("V{i}")));
        labels.extend(alg.labels().iter().map(|l| format!("{l}+")));
        labels.extend((0..dims.skew).map(|i| format!("s+{i}")));
        let mut l = TkkAlgebra {
            alg: alg.clone(),
            inst_space,
            inst_basis,
            dims,
            table: Vec::new(),
            ad: Vec::new(),
            labels,
        };
        let basis_comps: Vec<Components<F>> =
            (0..total).map(|i| l.decompose(&f.unit_vec(total, i))).collect();
        let mut table = Vec::with_capacity(total * total);
        for x in &basis_comps {
            for y in &basis_comps {
                let c = l.bracket_components(x, y);
                table.push(l.compose(&c)?);
            }
        }
        l.table = table;
        l.ad = (0..total)
            .map(|i| {
                let cols: Vec<Vec<F::Elem>> = (0..total).map(|j| l.table[i * total + j].clone()).collect();
                Matrix::from_columns(f, total, &cols).expect("square")
            })
            .collect();
        Ok(l)
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.alg
    }
    pub fn field(&self) -> F {
        self.alg.field()
    }
    pub fn dims(&self) -> GradeDims {
        self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }
    pub fn inst_basis(&self) -> &[Matrix<F>] {
        &self.inst_basis
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn basis_vector(&self, i: usize) -> LieElement<F> {
        self.field().unit_vec(self.total_dim(), i)
    }
    pub fn zero(&self) -> LieElement<F> {
        self.field().vzero(self.total_dim())
    }

    /// Index range of the grade-g component in the graded basis.
    pub fn grade_range(&self, g: i32) -> std::ops::Range<usize> {
        let d = self.dims;
        let offs = [0, d.skew, d.skew + d.alg, d.skew + d.alg + d.inst, d.skew + 2 * d.alg + d.inst, d.total()];
        match g {
            -2..=2 => {
                let k = (g + 2) as usize;
                offs[k]..offs[k + 1]
            }
            _ => 0..0,
        }
    }

    pub fn grade_of(&self, i: usize) -> i32 {
        (-2..=2).find(|&g| self.grade_range(g).contains(&i)).expect("index in range")
    }

    /// Coordinates of the skew element `s` (algebra coordinates) in the RREF basis of S.
    fn skew_coords(&self, s: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.alg
            .skew()
            .coordinates(s)
            .ok_or_else(|| Error::Precondition(format!("{} is not skew", self.alg.format(s))))
    }

    fn skew_from_coords(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut s = f.vzero(self.dims.alg);
        for (ci, b) in c.iter().zip(self.alg.skew().basis()) {
            f.vaxpy(&mut s, ci, b);
        }
        s
    }

    /// Coordinates of an operator in the Inst basis, if it lies in Inst(A).
    pub fn inst_coords(&self, v: &Matrix<F>) -> Result<Vec<F::Elem>> {
        self.inst_space
            .coordinates(v.data())
            .ok_or_else(|| Error::Verification(format!("operator not in Inst(A): {v:?}")))
    }

    pub fn decompose(&self, x: &[F::Elem]) -> Components<F> {
        assert_eq!(x.len(), self.total_dim(), "dimension mismatch");
        let f = self.field();
        let n = self.dims.alg;
        let mut inst = Matrix::zeros(f, n, n);
        for (c, b) in x[self.grade_range(0)].iter().zip(&self.inst_basis) {
            inst.axpy(c, b);
        }
        Components {
            s_minus: self.skew_from_coords(&x[self.grade_range(-2)]),
            a_minus: x[self.grade_range(-1)].to_vec(),
            inst,
            a_plus: x[self.grade_range(1)].to_vec(),
            s_plus: self.skew_from_coords(&x[self.grade_range(2)]),
        }
    }

    pub fn compose(&self, c: &Components<F>) -> Result<LieElement<F>> {
        let mut out = Vec::with_capacity(self.total_dim());
        out.extend(self.skew_coords(&c.s_minus)?);
        out.extend(c.a_minus.iter().cloned());
        out.extend(self.inst_coords(&c.inst)?);
        out.extend(c.a_plus.iter().cloned());
        out.extend(self.skew_coords(&c.s_plus)?);
        Ok(out)
    }

    fn zero_components(&self) -> Components<F> {
        let f = self.field();
        let n = self.dims.alg;
        Components {
            s_minus: f.vzero(n),
            a_minus: f.vzero(n),
            inst: Matrix::zeros(f, n, n),
            a_plus: f.vzero(n),
            s_plus: f.vzero(n),
        }
    }

    pub fn s_minus(&self, s: &[F::Elem]) -> Result<LieElement<F>> {
        let mut c = self.zero_components();
        c.s_minus = s.to_vec();
        self.compose(&c)
    }
    pub fn a_minus(&self, a: &[F::Elem]) -> LieElement<F> {
        let mut c = self.zero_components();
        c.a_minus = a.to_vec();
        self.compose(&c).expect("always representable")
    }
    pub fn inst(&self, v: &Matrix<F>) -> Result<LieElement<F>> {
        let mut c = self.zero_components();
        c.inst = v.clone();
        self.compose(&c)
    }
    pub fn a_plus(&self, a: &[F::Elem]) -> LieElement<F> {
        let mut c = self.zero_components();
        c.a_plus = a.to_vec();
        self.compose(&c).expect("always representable")
    }
    pub fn s_plus(&self, s: &[F::Elem]) -> Result<LieElement<F>> {
        let mut c = self.zero_components();
        c.s_plus = s.to_vec();
        self.compose(&c)
    }
    /// a_σ for σ = ±1
    pub fn a_sigma(&self, a: &[F::Elem], sigma: i32) -> LieElement<F> {
        if sigma > 0 {
            self.a_plus(a)
        } else {
            self.a_minus(a)
        }
    }
    /// s_σ for σ = ±1
    pub fn s_sigma(&self, s: &[F::Elem], sigma: i32) -> Result<LieElement<F>> {
        if sigma > 0 {
            self.s_plus(s)
        } else {
            self.s_minus(s)
        }
    }

    /// The bracket of two elements given by components, straight from the defining list.
    pub fn bracket_components(&self, x: &Components<F>, y: &Components<F>) -> Components<F> {
        let a = &self.alg;
        let f = self.field();
        let mut r = self.zero_components();
        let nz = |v: &[F::Elem]| !f.vis_zero(v);

        // grade 0 with everything
        let (vx, vy) = (&x.inst, &y.inst);
        if !vx.is_zero() || !vy.is_zero() {
            r.inst = vx.commutator(vy);
        }
        let act = |v: &Matrix<F>, other: &Components<F>, r: &mut Components<F>, sign: &F::Elem| {
            if v.is_zero() {
                return;
            }
            if nz(&other.a_plus) {
                f.vaxpy(&mut r.a_plus, sign, &v.mul_vec(&other.a_plus));
            }
            if nz(&other.a_minus) {
                f.vaxpy(&mut r.a_minus, sign, &a.epsilon(v).mul_vec(&other.a_minus));
            }
            if nz(&other.s_plus) {
                f.vaxpy(&mut r.s_plus, sign, &a.delta(v).mul_vec(&other.s_plus));
            }
            if nz(&other.s_minus) {
                f.vaxpy(&mut r.s_minus, sign, &a.epsilon_then_delta(v).mul_vec(&other.s_minus));
            }
        };
        let one = f.one();
        let mone = f.neg(&one);
        act(vx, y, &mut r, &one);
        act(vy, x, &mut r, &mone);

        // [s+, a-] = (sa)+ and [s-, a+] = (sa)-
        let cross_sa = |s: &[F::Elem], b: &[F::Elem]| a.mul(s, b);
        if nz(&x.s_plus) && nz(&y.a_minus) {
            f.vaxpy(&mut r.a_plus, &one, &cross_sa(&x.s_plus, &y.a_minus));
        }
        if nz(&y.s_plus) && nz(&x.a_minus) {
            f.vaxpy(&mut r.a_plus, &mone, &cross_sa(&y.s_plus, &x.a_minus));
        }
        if nz(&x.s_minus) && nz(&y.a_plus) {
            f.vaxpy(&mut r.a_minus, &one, &cross_sa(&x.s_minus, &y.a_plus));
        }
        if nz(&y.s_minus) && nz(&x.a_plus) {
            f.vaxpy(&mut r.a_minus, &mone, &cross_sa(&y.s_minus, &x.a_plus));
        }
        // [a+, b-] = V_{a,b}
        if nz(&x.a_plus) && nz(&y.a_minus) {
            r.inst.axpy(&one, &a.v_op(&x.a_plus, &y.a_minus));
        }
        if nz(&y.a_plus) && nz(&x.a_minus) {
            r.inst.axpy(&mone, &a.v_op(&y.a_plus, &x.a_minus));
        }
        // [a+, b+] = ψ(a,b)+ and [a-, b-] = ψ(a,b)-
        if nz(&x.a_plus) && nz(&y.a_plus) {
            f.vaxpy(&mut r.s_plus, &one, &a.psi(&x.a_plus, &y.a_plus));
        }
        if nz(&x.a_minus) && nz(&y.a_minus) {
            f.vaxpy(&mut r.s_minus, &one, &a.psi(&x.a_minus, &y.a_minus));
        }
        // [s+, t-] = L_s L_t
        if nz(&x.s_plus) && nz(&y.s_minus) {
            r.inst.axpy(&one, &a.left(&x.s_plus).mul(&a.left(&y.s_minus)));
        }
        if nz(&y.s_plus) && nz(&x.s_minus) {
            r.inst.axpy(&mone, &a.left(&y.s_plus).mul(&a.left(&x.s_minus)));
        }
        r
    }

    /// ad(e_i) as a matrix.
    pub fn ad_basis(&self, i: usize) -> &Matrix<F> {
        &self.ad[i]
    }

    pub fn ad(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let n = self.total_dim();
        let mut m = Matrix::zeros(f, n, n);
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                m.axpy(c, &self.ad[i]);
            }
        }
        m
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.table[i * self.total_dim() + j]
    }

    pub fn bracket(&self, u: &[F::Elem], v: &[F::Elem]) -> LieElement<F> {
        let f = self.field();
        let n = self.total_dim();
        assert_eq!(u.len(), n, "dimension mismatch");
        assert_eq!(v.len(), n, "dimension mismatch");
        let mut out = f.vzero(n);
        for (i, ui) in u.iter().enumerate() {
            if f.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if f.is_zero(vj) {
                    continue;
                }
                f.vaxpy(&mut out, &f.mul(ui, vj), &self.table[i * n + j]);
            }
        }
        out
    }

    pub fn grade_project(&self, u: &[F::Elem], g: i32) -> LieElement<F> {
        let mut out = self.zero();
        for i in self.grade_range(g) {
            out[i] = u[i].clone();
        }
        out
    }

    /// The homogeneous subspace L_g.
    pub fn grade_space(&self, g: i32) -> Subspace<F> {
        let vecs: Vec<_> = self.grade_range(g).map(|i| self.basis_vector(i)).collect();
        Subspace::span(self.field(), self.total_dim(), &vecs).expect("consistent")
    }

    pub fn format(&self, x: &[F::Elem]) -> String {
        let f = self.field();
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| if f.is_one(c) { self.labels[i].clone() } else { format!("{}*{}", f.format(c), self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn check_antisymmetry(&self) -> CheckReport {
        let f = self.field();
        let n = self.total_dim();
        for i in 0..n {
            for j in i..n {
                if f.vadd(self.basis_bracket(i, j), self.basis_bracket(j, i)) != self.zero() {
                    return CheckReport::fail(
                        "antisymmetry",
                        (i * n + j) as u64,
                        format!("[{}, {}]", self.labels[i], self.labels[j]),
                    );
                }
            }
        }
        CheckReport::pass("antisymmetry", (n * (n + 1) / 2) as u64)
    }

    /// Jacobi identity on all ordered basis triples.
    pub fn check_jacobi(&self) -> CheckReport {
        let f = self.field();
        let n = self.total_dim();
        let mut checked = 0u64;
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_bracket(i, j);
                for k in 0..n {
                    checked += 1;
                    let mut s = self.ad[k].mul_vec(bij);
                    s = f.vadd(&s, &self.ad[i].mul_vec(self.basis_bracket(j, k)));
                    s = f.vadd(&s, &self.ad[j].mul_vec(self.basis_bracket(k, i)));
                    if !f.vis_zero(&s) {
                        return CheckReport::fail(
                            "Jacobi identity",
                            checked,
                            format!("basis triple ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]),
                        );
                    }
                }
            }
        }
        CheckReport::pass("Jacobi identity", checked)
    }

    /// [L_i, L_j] ⊆ L_{i+j} on all basis pairs.
    pub fn check_grading(&self) -> CheckReport {
        let f = self.field();
        let n = self.total_dim();
        for i in 0..n {
            for j in 0..n {
                let g = self.grade_of(i) + self.grade_of(j);
                let target = self.grade_range(g);
                let b = self.basis_bracket(i, j);
                if b.iter().enumerate().any(|(k, c)| !f.is_zero(c) && !target.contains(&k)) {
                    return CheckReport::fail(
                        "grading",
                        (i * n + j + 1) as u64,
                        format!("[{}, {}] leaves grade {g}", self.labels[i], self.labels[j]),
                    );
                }
            }
        }
        CheckReport::pass("grading", (n * n) as u64)
    }

    /// L₀ = [L₁, L₋₁] as subspaces.
    pub fn check_l0_generated(&self) -> CheckReport {
        let mut vecs = Vec::new();
        for i in self.grade_range(1) {
            for j in self.grade_range(-1) {
                vecs.push(self.basis_bracket(i, j).to_vec());
            }
        }
        let span = Subspace::span(self.field(), self.total_dim(), &vecs).expect("consistent");
        let checked = vecs.len() as u64;
        if span == self.grade_space(0) {
            CheckReport::pass("L0 = [L1, L-1]", checked)
        } else {
            CheckReport::fail(
                "L0 = [L1, L-1]",
                checked,
                format!("span has dimension {}, L0 has dimension {}", span.dim(), self.dims.inst),
            )
        }
    }

    /// The table rows [V, s₊], [V, a₋], [V, a₊], [V, s₋] agree with the ε/δ transforms.
    pub fn check_epsilon_delta_consistency(&self) -> CheckReport {
        let a = &self.alg;
        let mut checked = 0;
        for (vi, v) in self.inst_basis.iter().enumerate() {
            let vl = self.inst(v).expect("basis of Inst");
            for k in 0..a.dim() {
                let e = a.basis_vector(k);
                checked += 2;
                if self.bracket(&vl, &self.a_plus(&e)) != self.a_plus(&v.mul_vec(&e))
                    || self.bracket(&vl, &self.a_minus(&e)) != self.a_minus(&a.epsilon(v).mul_vec(&e))
                {
                    return CheckReport::fail("epsilon/delta consistency", checked, format!("V{vi} on {}", a.labels()[k]));
                }
            }
            for (si, s) in a.skew().basis().iter().enumerate() {
                checked += 2;
                let sp = self.s_plus(s).expect("skew");
                let sm = self.s_minus(s).expect("skew");
                if self.bracket(&vl, &sp) != self.s_plus(&a.delta(v).mul_vec(s)).expect("skew")
                    || self.bracket(&vl, &sm) != self.s_minus(&a.epsilon_then_delta(v).mul_vec(s)).expect("skew")
                {
                    return CheckReport::fail("epsilon/delta consistency", checked, format!("V{vi} on skew basis {si}"));
                }
            }
        }
        CheckReport::pass("epsilon/delta consistency", checked)
    }

    /// dim span{T_x} and the dimension of a complement in Inst(A).
    pub fn inst_split(&self) -> (usize, usize) {
        let a = &self.alg;
        let n = a.dim();
        let flat: Vec<Vec<F::Elem>> = (0..n).map(|i| a.t_op(&a.basis_vector(i)).data().to_vec()).collect();
        let t = Subspace::span(self.field(), n * n, &flat).expect("consistent").dim();
        (t, self.dims.inst - t)
    }

    pub fn is_absolute_zero_divisor(&self, x: &[F::Elem]) -> bool {
        let adx = self.ad(x);
        adx.mul(&adx).is_zero()
    }

    /// Search for absolute zero divisors: exhaustive over 1-dim spans (finite fields, up to
    /// `budget` candidates) or seeded random sampling (infinite fields).
    pub fn check_nondegenerate(&self, budget: u64, seed: u64) -> CheckReport {
        let f = self.field();
        let n = self.total_dim();
        let name = "no absolute zero divisor";
        let mut checked = 0u64;
        let mut complete = false;
        if let Some(q) = f.size() {
            // normalized vectors: leading entry 1 at position p, free entries after it
            'outer: for p in 0..n {
                let free = n - p - 1;
                let count = q.checked_pow(free as u32).unwrap_or(u64::MAX);
                for idx in 0..count {
                    if checked >= budget {
                        break 'outer;
                    }
                    let mut x = f.vzero(n);
                    x[p] = f.one();
                    let mut r = idx;
                    for k in (p + 1..n).rev() {
                        x[k] = f.element(r % q);
                        r /= q;
                    }
                    checked += 1;
                    if self.is_absolute_zero_divisor(&x) {
                        return CheckReport::fail(name, checked, self.format(&x));
                    }
                }
                if p == n - 1 {
                    complete = true;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while checked < budget {
                let x = f.vrandom(n, &mut rng);
                if f.vis_zero(&x) {
                    continue;
                }
                checked += 1;
                if self.is_absolute_zero_divisor(&x) {
                    return CheckReport::fail(name, checked, self.format(&x));
                }
            }
        }
        let note = if complete {
            "all 1-dimensional spans scanned".to_string()
        } else {
            format!("no absolute zero divisor found in {checked} candidates (not a proof)")
        };
        CheckReport::pass(name, checked).with_note(note)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::CubicNormStructure;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::structalg::instances;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn exchange_dims() {
        let l = TkkAlgebra::build(&instances::exchange_field(f5())).unwrap();
        assert_eq!(l.total_dim(), 8);
        assert_eq!(l.dims().as_tuple(), (1, 2, 2, 2, 1));
        assert!(l.check_l0_generated().passed());
        assert!(l.check_epsilon_delta_consistency().passed());
    }

    #[test]
    fn g2_dims() {
        let j = CubicNormStructure::rank1(f5()).unwrap();
        let a = instances::matrix_structurable(&j, &1).unwrap();
        let l = TkkAlgebra::build(&a).unwrap();
        assert_eq!(l.dims().as_tuple(), (1, 4, 4, 4, 1));
        assert!(l.check_l0_generated().passed());
    }

    #[test]
    fn jordan_dims() {
        let a = instances::jordan_extension(f5(), &[3, 0]).unwrap();
        let l = TkkAlgebra::build(&a).unwrap();
        assert_eq!(l.dims().as_tuple(), (0, 2, 2, 2, 0));
    }

    #[test]
    fn quaternion_dims() {
        let q = Rationals;
        let a = instances::hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        let l = TkkAlgebra::build(&a).unwrap();
        assert_eq!(l.total_dim(), 21);
    }

    #[test]
    fn bracket_examples() {
        let f = f5();
        let a = instances::exchange_field(f);
        let l = TkkAlgebra::build(&a).unwrap();
        let s = vec![1, 4];
        let sp = l.s_plus(&s).unwrap();
        assert_eq!(l.bracket(&sp, &l.s_plus(&s).unwrap()), l.zero());
        let x = vec![1, 2];
        let y = vec![3, 1];
        assert_eq!(l.bracket(&l.a_plus(&x), &l.a_minus(&y)), l.inst(&a.v_op(&x, &y)).unwrap());
        // s is its own conjugate inverse up to sign: ŝ = (4,1) = -s
        let sh = a.conjugate_inverse(&s).unwrap();
        assert_eq!(sh, vec![4, 1]);
        let b = l.bracket(&sp, &l.s_minus(&sh).unwrap());
        assert_eq!(b, l.inst(&Matrix::identity(f, 2).neg()).unwrap());
        assert_eq!(l.grade_project(&sp, 2), sp);
        assert_eq!(l.grade_project(&sp, 0), l.zero());
        let mixed = f.vadd(&l.a_plus(&x), &sp);
        assert_eq!(l.grade_project(&mixed, 1), l.a_plus(&x));
    }

    #[test]
    fn nondegenerate_exchange_exhaustive() {
        let l = TkkAlgebra::build(&instances::exchange_field(f5())).unwrap();
        let r = l.check_nondegenerate(1_000_000, 0);
        assert!(r.passed());
        assert_eq!(r.checked, (5u64.pow(8) - 1) / 4);
    }
}
