use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::automorphism::e_sigma;
use super::{inner_closure, is_extremal};
use crate::error::{Error, Result};
use crate::exactlin::{enumerate_vectors, Field, Matrix};
use crate::geometry::{classify_pair, PairClass};
use crate::report::CheckReport;
use crate::tkk::TkkAlgebra;

/// Largest set that is enumerated exhaustively; bigger sets are sampled.
const EXHAUSTIVE_LIMIT: u64 = 20_000;

fn random_skew<F: Field>(l: &TkkAlgebra<F>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = l.field();
    let mut s = f.vzero(l.algebra().dim());
    for b in l.algebra().skew().basis() {
        f.vaxpy(&mut s, &f.random(rng), b);
    }
    s
}

/// Linear combinations Σ c_i v_i: all of them when the field is small enough, else samples.
fn combinations<F: Field, T: Clone>(
    f: F,
    basis: &[T],
    combine: impl Fn(&[F::Elem]) -> T,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<T>, bool) {
    let k = basis.len();
    if let Some(q) = f.size() {
        if q.checked_pow(k as u32).is_some_and(|c| c <= EXHAUSTIVE_LIMIT) {
            return (enumerate_vectors(f, k).expect("finite").map(|c| combine(&c)).collect(), true);
        }
    }
    ((0..samples).map(|_| combine(&f.vrandom(k, rng))).collect(), false)
}

/// The closed form of e₊(a,s)(t₋) against exp(ad), on basis tuples and seeded samples.
pub fn check_image_e_plus<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = "image of e+ closed form";
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let skew = alg.skew().basis().to_vec();
    let mut tuples = Vec::new();
    let mut avals = vec![f.vzero(n)];
    avals.extend((0..n).map(|i| alg.basis_vector(i)));
    let mut svals = vec![f.vzero(n)];
    svals.extend(skew.iter().cloned());
    for a in &avals {
        for s in &svals {
            for t in &skew {
                tuples.push((a.clone(), s.clone(), t.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !skew.is_empty() {
        for _ in 0..samples {
            tuples.push((f.vrandom(n, &mut rng), random_skew(l, &mut rng), random_skew(l, &mut rng)));
        }
    }
    let third = f.inv(&f.from_i64(6)).expect("char > 3");
    let twentyfourth = f.inv(&f.from_i64(24)).expect("char > 3");
    let half = f.half();
    for (k, (a, s, t)) in tuples.iter().enumerate() {
        let phi = match e_sigma(l, a, s, 1) {
            Ok(p) => p,
            Err(e) => return CheckReport::fail(name, k as u64, e.to_string()),
        };
        let lhs = phi.apply(&l.s_minus(t).expect("skew"));
        let ta = alg.mul(t, a);
        let ua_ta = alg.u_op(a).mul_vec(&ta);
        let s_ta = alg.mul(s, &ta);
        let mut c = l.decompose(&l.zero());
        c.s_minus = t.clone();
        c.a_minus = f.vneg(&ta);
        c.inst = alg.left(s).mul(&alg.left(t)).sub(&alg.v_op(a, &ta).scale(&half));
        c.a_plus = f.vadd(&f.vneg(&s_ta), &f.vscale(&third, &ua_ta));
        let mut top = f.vneg(&alg.mul(s, &alg.mul(t, s)));
        f.vaxpy(&mut top, &f.neg(&half), &alg.psi(a, &s_ta));
        f.vaxpy(&mut top, &twentyfourth, &alg.psi(a, &ua_ta));
        c.s_plus = top;
        let rhs = match l.compose(&c) {
            Ok(r) => r,
            Err(e) => return CheckReport::fail(name, k as u64 + 1, e.to_string()),
        };
        if lhs != rhs {
            return CheckReport::fail(
                name,
                k as u64 + 1,
                format!("a={}, s={}, t={}", alg.format(a), alg.format(s), alg.format(t)),
            );
        }
    }
    CheckReport::pass(name, tuples.len() as u64)
}

/// e_σ(a,s) ∘ e_σ(b,t) = e_σ(a+b, s+t+½ψ(a,b)) on seeded samples, both signs. As a product
/// in the `fg = g∘f` convention this is e_σ(b,t)·e_σ(a,s).
pub fn check_group_law<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = "E-sigma group law";
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let sigma = if k % 2 == 0 { 1 } else { -1 };
        let (a, b) = (f.vrandom(n, &mut rng), f.vrandom(n, &mut rng));
        let (s, t) = (random_skew(l, &mut rng), random_skew(l, &mut rng));
        let mut u = f.vadd(&s, &t);
        f.vaxpy(&mut u, &f.half(), &alg.psi(&a, &b));
        let ok = (|| -> Result<bool> {
            let lhs = e_sigma(l, &b, &t, sigma)?.then(&e_sigma(l, &a, &s, sigma)?);
            let rhs = e_sigma(l, &f.vadd(&a, &b), &u, sigma)?;
            Ok(lhs.matrix() == rhs.matrix())
        })();
        if !matches!(ok, Ok(true)) {
            return CheckReport::fail(
                name,
                k as u64 + 1,
                format!("sigma={sigma}, a={}, s={}, b={}, t={}", alg.format(&a), alg.format(&s), alg.format(&b), alg.format(&t)),
            );
        }
    }
    CheckReport::pass(name, samples as u64)
}

fn inst_combination<F: Field>(l: &TkkAlgebra<F>, basis: &[Matrix<F>], c: &[F::Elem]) -> Matrix<F> {
    let n = l.algebra().dim();
    let mut m = Matrix::zeros(l.field(), n, n);
    for (ci, b) in c.iter().zip(basis) {
        m.axpy(ci, b);
    }
    m
}

/// Basis of {V ∈ Inst : V^δ(s) = 0 for every s in `skews`}.
fn delta_annihilator<F: Field>(l: &TkkAlgebra<F>, skews: &[Vec<F::Elem>]) -> Vec<Matrix<F>> {
    let f = l.field();
    let alg = l.algebra();
    let inst = l.inst_basis();
    if skews.is_empty() {
        return inst.to_vec();
    }
    let rows = skews.len() * alg.dim();
    let cols: Vec<Vec<F::Elem>> = inst
        .iter()
        .map(|v| {
            let d = alg.delta(v);
            skews.iter().flat_map(|s| d.mul_vec(s)).collect()
        })
        .collect();
    let m = Matrix::from_columns(f, rows, &cols).expect("consistent");
    m.kernel().iter().map(|c| inst_combination(l, inst, c)).collect()
}

/// For every V ∈ Inst with V^δ(S) = 0 and V² = 0, some W ∈ Inst has ([V,[V,W]])² ≠ 0.
pub fn check_assumption_v0<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = "assumption on nilpotent V";
    let f = l.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kbasis = delta_annihilator(l, l.algebra().skew().basis());
    let (pool, exhaustive) = combinations(f, &kbasis, |c| inst_combination(l, &kbasis, c), samples, &mut rng);
    let inst = l.inst_basis().to_vec();
    let (wpool, _) = combinations(f, &inst, |c| inst_combination(l, &inst, c), samples, &mut rng);
    let mut qualifying = 0u64;
    for v in pool.iter().filter(|v| !v.is_zero() && v.mul(v).is_zero()) {
        qualifying += 1;
        let found = inst.iter().chain(wpool.iter()).any(|w| {
            let u = v.commutator(&v.commutator(w));
            !u.mul(&u).is_zero()
        });
        if !found {
            return CheckReport::inconclusive(name, qualifying, format!("no W found for V = {v:?}"));
        }
    }
    let note = format!(
        "{qualifying} qualifying V ({})",
        if exhaustive { "exhaustive" } else { "sampled" }
    );
    CheckReport::pass(name, qualifying).with_note(note)
}

/// Identities relating V and V^ε: for conjugate-invertible a with V² = (V^ε)² = 0,
/// V(a) = 0 ⟺ V^ε(â) = 0; and WV = 0 ⟺ W^εV^ε = 0 when V^δ(s) = W^δ(s) = 0.
pub fn check_v_epsilon_lemmas<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = "V versus V-epsilon lemmas";
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = l.inst_basis().to_vec();
    let (pool, _) = combinations(f, &inst, |c| inst_combination(l, &inst, c), samples, &mut rng);
    let nil: Vec<_> = pool
        .iter()
        .filter(|v| v.mul(v).is_zero() && {
            let e = alg.epsilon(v);
            e.mul(&e).is_zero()
        })
        .collect();
    let mut checked = 0u64;
    let avals: Vec<Vec<F::Elem>> = (0..samples.min(50)).map(|_| f.vrandom(n, &mut rng)).collect();
    for a in &avals {
        let Some(ahat) = alg.conjugate_inverse(a) else { continue };
        for v in &nil {
            checked += 1;
            if f.vis_zero(&v.mul_vec(a)) != f.vis_zero(&alg.epsilon(v).mul_vec(&ahat)) {
                return CheckReport::fail(name, checked, format!("a = {}, V = {v:?}", alg.format(a)));
            }
        }
    }
    for s in alg.skew().basis() {
        if alg.conjugate_inverse(s).is_none() {
            continue;
        }
        let kb = delta_annihilator(l, std::slice::from_ref(s));
        let (ks, _) = combinations(f, &kb, |c| inst_combination(l, &kb, c), samples, &mut rng);
        let ks: Vec<_> = ks.into_iter().take(200).collect();
        for v in &ks {
            let ve = alg.epsilon(v);
            for w in &ks {
                checked += 1;
                if w.mul(v).is_zero() != alg.epsilon(w).mul(&ve).is_zero() {
                    return CheckReport::fail(name, checked, format!("V = {v:?}, W = {w:?}"));
                }
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// Any inner ideal containing a nonzero s₊ contains S₊.
pub fn check_inner_containing_skew<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = "inner ideal generated by s+ contains S+";
    let f = l.field();
    let alg = l.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let skew = alg.skew().basis().to_vec();
    let combine = |c: &[F::Elem]| {
        let mut s = f.vzero(alg.dim());
        for (ci, b) in c.iter().zip(&skew) {
            f.vaxpy(&mut s, ci, b);
        }
        s
    };
    let (pool, _) = combinations(f, &skew, combine, samples, &mut rng);
    let splus = l.grade_space(2);
    let mut checked = 0;
    for s in pool.iter().filter(|s| !f.vis_zero(s)) {
        checked += 1;
        let c = inner_closure(l, &[l.s_plus(s).expect("skew")]);
        if !splus.is_subspace_of(&c) {
            return CheckReport::fail(name, checked, alg.format(s));
        }
    }
    CheckReport::pass(name, checked)
}

/// The five conditions of the extremality characterization for a₊ (skew dimension one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalConditions {
    pub a_plus_extremal: bool,
    pub u_a_image_in_span: bool,
    pub u_sa_image_in_span: bool,
    pub v_a_sa_zero: bool,
    pub line_with_s_plus: bool,
}

impl ExtremalConditions {
    pub fn as_array(&self) -> [bool; 5] {
        [self.a_plus_extremal, self.u_a_image_in_span, self.u_sa_image_in_span, self.v_a_sa_zero, self.line_with_s_plus]
    }
    pub fn agree(&self) -> bool {
        let v = self.as_array();
        v.iter().all(|&b| b == v[0])
    }
}

fn image_in_span<F: Field>(m: &Matrix<F>, x: &[F::Elem]) -> bool {
    let f = m.field();
    let span = crate::exactlin::Subspace::line(f, x);
    (0..m.cols()).all(|k| span.contains(&m.column(k)))
}

pub fn extremal_conditions<F: Field>(l: &TkkAlgebra<F>, a: &[F::Elem]) -> Result<ExtremalConditions> {
    let f = l.field();
    let alg = l.algebra();
    if alg.skew().dim() != 1 {
        return Err(Error::Precondition("skew dimension must be one".into()));
    }
    if f.vis_zero(a) {
        return Err(Error::Precondition("a must be nonzero".into()));
    }
    let s = alg.skew().basis()[0].clone();
    let sa = alg.mul(&s, a);
    let ap = l.a_plus(a);
    let sp = l.s_plus(&s)?;
    let a_plus_extremal = is_extremal(l, &ap)?;
    let line_with_s_plus =
        a_plus_extremal && classify_pair(l, &sp, &ap)? == PairClass::StronglyCommuting;
    Ok(ExtremalConditions {
        a_plus_extremal,
        u_a_image_in_span: image_in_span(&alg.u_op(a), a),
        u_sa_image_in_span: image_in_span(&alg.u_op(&sa), &sa),
        v_a_sa_zero: alg.v_op(a, &sa).is_zero(),
        line_with_s_plus,
    })
}

/// The five-way equivalence on every nonzero a in `elements`.
pub fn check_extremal_characterization<F: Field>(l: &TkkAlgebra<F>, elements: &[Vec<F::Elem>]) -> CheckReport {
    let name = "extremality characterization";
    let alg = l.algebra();
    let mut checked = 0;
    for a in elements.iter().filter(|a| !l.field().vis_zero(a)) {
        checked += 1;
        match extremal_conditions(l, a) {
            Ok(c) if c.agree() => {}
            Ok(c) => return CheckReport::fail(name, checked, format!("a = {}: {:?}", alg.format(a), c.as_array())),
            Err(e) => return CheckReport::fail(name, checked, e.to_string()),
        }
    }
    CheckReport::pass(name, checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::CubicNormStructure;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::structalg::instances;

    fn exchange() -> TkkAlgebra<PrimeField> {
        TkkAlgebra::build(&instances::exchange_field(PrimeField::new(5).unwrap())).unwrap()
    }

    fn hexagon() -> TkkAlgebra<PrimeField> {
        let f = PrimeField::new(5).unwrap();
        let j = CubicNormStructure::rank1(f).unwrap();
        TkkAlgebra::build(&instances::matrix_structurable(&j, &1).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_and_group_law() {
        for l in [exchange(), hexagon()] {
            let r = check_image_e_plus(&l, 20, 1);
            assert!(r.passed(), "{r}");
            let r = check_group_law(&l, 20, 2);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn quaternion_group_law() {
        let q = Rationals;
        let a = instances::hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        let l = TkkAlgebra::build(&a).unwrap();
        assert!(check_group_law(&l, 4, 3).passed());
        assert!(check_image_e_plus(&l, 4, 3).passed());
    }

    #[test]
    fn assumption_and_lemmas() {
        for l in [exchange(), hexagon()] {
            let r = check_assumption_v0(&l, 50, 0);
            assert!(r.passed(), "{r}");
            let r = check_v_epsilon_lemmas(&l, 50, 0);
            assert!(r.passed(), "{r}");
            let r = check_inner_containing_skew(&l, 10, 0);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn characterization_on_examples() {
        let l = hexagon();
        let c = extremal_conditions(&l, &[3, 2, 4, 1]).unwrap();
        assert_eq!(c.as_array(), [true; 5]);
        let c = extremal_conditions(&l, l.algebra().unit()).unwrap();
        assert_eq!(c.as_array(), [false; 5]);
        let s = l.algebra().skew().basis()[0].clone();
        assert!(extremal_conditions(&l, &s).unwrap().agree());
    }
}
