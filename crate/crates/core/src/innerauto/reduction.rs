use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::automorphism::{e_sigma, Automorphism};
use super::is_inner_ideal;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::report::CheckReport;
use crate::tkk::TkkAlgebra;

/// A generator e_σ(a, s) by its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecipe<F: Field> {
    pub sigma: i32,
    pub a: Vec<F::Elem>,
    pub s: Vec<F::Elem>,
}

impl<F: Field> GeneratorRecipe<F> {
    pub fn build(&self, l: &TkkAlgebra<F>) -> Result<Automorphism<F>> {
        e_sigma(l, &self.a, &self.s, self.sigma)
    }
}

/// e_±(c·e_j, 0) and e_±(0, c·s_k) with c running over a prime-field basis.
pub fn generator_set<F: Field>(l: &TkkAlgebra<F>) -> Vec<GeneratorRecipe<F>> {
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let mut out = Vec::new();
    for sigma in [1, -1] {
        for c in f.prime_basis() {
            for j in 0..n {
                out.push(GeneratorRecipe { sigma, a: f.vscale(&c, &alg.basis_vector(j)), s: f.vzero(n) });
            }
            for s in alg.skew().basis() {
                out.push(GeneratorRecipe { sigma, a: f.vzero(n), s: f.vscale(&c, s) });
            }
        }
    }
    out
}

/// A product of `len` generators e_±(a, s) with random parameters.
pub fn random_word<F: Field, R: Rng>(l: &TkkAlgebra<F>, len: usize, rng: &mut R) -> Result<Automorphism<F>> {
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let mut phi = Automorphism::identity(l);
    for _ in 0..len {
        let sigma = if rng.gen::<bool>() { 1 } else { -1 };
        let a = f.vrandom(n, rng);
        let mut s = f.vzero(n);
        for b in alg.skew().basis() {
            f.vaxpy(&mut s, &f.random(rng), b);
        }
        phi = phi.then(&e_sigma(l, &a, &s, sigma)?);
    }
    Ok(phi)
}

/// Parameters (a, s) with I = e_σ(a, s)(S_{−σ}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery<F: Field> {
    pub a: Vec<F::Elem>,
    pub s: Vec<F::Elem>,
    /// The representation is unique (both linear recovery maps are injective).
    pub unique: bool,
}

/// Solves for (a, s) with I = e_σ(a, s)(S_{−σ}) from one element of I, then verifies.
pub fn recover_params<F: Field>(l: &TkkAlgebra<F>, i: &Subspace<F>, sigma: i32) -> Result<Recovery<F>> {
    let f = l.field();
    let alg = l.algebra();
    let n = alg.dim();
    let x = i
        .basis()
        .iter()
        .find(|b| !f.vis_zero(&l.grade_project(b, -2 * sigma)))
        .ok_or_else(|| Error::Precondition(format!("no element with nonzero grade {} part", -2 * sigma)))?;
    let t = l.grade_project(x, -2 * sigma);
    let total = l.total_dim();
    // grade −σ part of x is [a_σ, t]
    let cols: Vec<_> = (0..n).map(|j| l.bracket(&l.a_sigma(&alg.basis_vector(j), sigma), &t)).collect();
    let m = Matrix::from_columns(f, total, &cols)?;
    let target = l.grade_project(x, -sigma);
    let a = m.solve(&target)?.ok_or_else(|| Error::Verification("grade ±1 part not reachable".into()))?;
    let mut unique = m.rank() == n;
    // grade 0 part of x is [s_σ, t] + ½[a_σ, [a_σ, t]]
    let asig = l.a_sigma(&a, sigma);
    let second = l.bracket(&asig, &l.bracket(&asig, &t));
    let target0 = f.vsub(&l.grade_project(x, 0), &f.vscale(&f.half(), &second));
    let skew = alg.skew().basis();
    let cols: Vec<_> = skew.iter().map(|s| l.bracket(&l.s_sigma(s, sigma).expect("skew"), &t)).collect();
    let coeffs = if skew.is_empty() {
        if !f.vis_zero(&target0) {
            return Err(Error::Verification("grade 0 part not reachable".into()));
        }
        Vec::new()
    } else {
        let m0 = Matrix::from_columns(f, total, &cols)?;
        unique &= m0.rank() == skew.len();
        m0.solve(&target0)?.ok_or_else(|| Error::Verification("grade 0 part not reachable".into()))?
    };
    let mut s = f.vzero(n);
    for (c, b) in coeffs.iter().zip(skew) {
        f.vaxpy(&mut s, c, b);
    }
    let phi = e_sigma(l, &a, &s, sigma)?;
    if phi.apply_subspace(&l.grade_space(-2 * sigma)) != *i {
        return Err(Error::Verification(format!("{} does not map S onto the ideal", phi.word_string())));
    }
    Ok(Recovery { a, s, unique })
}

#[derive(Clone, Copy, Debug)]
pub struct NormalizeOptions {
    pub max_word_len: usize,
    pub random_budget: u64,
    pub seed: u64,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { max_word_len: 4, random_budget: 10_000, seed: 0 }
    }
}

fn has_top_component<F: Field>(l: &TkkAlgebra<F>, i: &Subspace<F>) -> bool {
    let f = l.field();
    i.basis().iter().any(|b| !f.vis_zero(&l.grade_project(b, 2)))
}

/// Step 1: a word w in the generators with w(I) containing an element with nonzero
/// 2-component. Bounded breadth-first search over basis generators, then seeded random words.
fn top_component_word<F: Field>(
    l: &TkkAlgebra<F>,
    i: &Subspace<F>,
    opts: &NormalizeOptions,
) -> Result<Automorphism<F>> {
    if has_top_component(l, i) {
        return Ok(Automorphism::identity(l));
    }
    let gens: Vec<Automorphism<F>> = generator_set(l).iter().map(|g| g.build(l)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    seen.insert(i.clone());
    let mut frontier = vec![(i.clone(), Automorphism::identity(l))];
    for _ in 0..opts.max_word_len {
        let mut next = Vec::new();
        for (sub, w) in &frontier {
            for g in &gens {
                let img = g.apply_subspace(sub);
                if !seen.insert(img.clone()) {
                    continue;
                }
                let w2 = w.then(g);
                if has_top_component(l, &img) {
                    return Ok(w2);
                }
                next.push((img, w2));
            }
        }
        frontier = next;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_budget {
        let len = rng.gen_range(1..=opts.max_word_len.max(1));
        let w = random_word(l, len, &mut rng)?;
        if has_top_component(l, &w.apply_subspace(i)) {
            return Ok(w);
        }
    }
    Err(Error::BudgetExceeded("no generator word produces a nonzero 2-component".into()))
}

/// φ ∈ E(A) with φ(S₊) = I, for a minimal inner ideal I (dimension dim S).
///
/// After step 1, pick x ∈ I with 2-component s, 1-component a and 0-component V, and take
/// e₋(ŝa, −½V^{εδ}(ŝ)).
pub fn normalize_to_splus<F: Field>(
    l: &TkkAlgebra<F>,
    i: &Subspace<F>,
    opts: &NormalizeOptions,
) -> Result<Automorphism<F>> {
    let f = l.field();
    let alg = l.algebra();
    let splus = l.grade_space(2);
    if splus.dim() == 0 {
        return Err(Error::Precondition("S is zero".into()));
    }
    if i.dim() != splus.dim() || !is_inner_ideal(l, i) {
        return Err(Error::Precondition("not a minimal inner ideal".into()));
    }
    let w = top_component_word(l, i, opts)?;
    let j = w.apply_subspace(i);
    let x = j
        .basis()
        .iter()
        .find(|b| !f.vis_zero(&l.grade_project(b, 2)))
        .expect("step 1 guarantees a 2-component");
    let c = l.decompose(x);
    let shat = alg
        .conjugate_inverse(&c.s_plus)
        .ok_or_else(|| Error::Precondition(format!("{} is not conjugate invertible", alg.format(&c.s_plus))))?;
    let a1 = alg.mul(&shat, &c.a_plus);
    let s1 = f.vscale(&f.neg(&f.half()), &alg.epsilon_then_delta(&c.inst).mul_vec(&shat));
    let phi = e_sigma(l, &a1, &s1, -1)?.then(&w.inverse());
    if phi.apply_subspace(&splus) != *i {
        return Err(Error::Verification(format!("candidate {} does not map S+ onto the ideal", phi.word_string())));
    }
    Ok(phi)
}

/// For seeded random words φ, normalize_to_splus(φ(S₊)) maps S₊ onto φ(S₊) exactly.
pub fn check_normalization<F: Field>(l: &TkkAlgebra<F>, trials: usize, seed: u64) -> CheckReport {
    let name = "normalization of random images of S+";
    let splus = l.grade_space(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let len = rng.gen_range(1..=4);
        let phi = match random_word(l, len, &mut rng) {
            Ok(p) => p,
            Err(e) => return CheckReport::fail(name, t as u64, e.to_string()),
        };
        let target = phi.apply_subspace(&splus);
        let opts = NormalizeOptions { seed: seed.wrapping_add(t as u64), ..NormalizeOptions::default() };
        match normalize_to_splus(l, &target, &opts) {
            Ok(psi) if psi.apply_subspace(&splus) == target => {}
            Ok(psi) => return CheckReport::fail(name, t as u64 + 1, format!("{} misses the image of {}", psi.word_string(), phi.word_string())),
            Err(e) => return CheckReport::fail(name, t as u64 + 1, format!("{}: {e}", phi.word_string())),
        }
    }
    CheckReport::pass(name, trials as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::structalg::instances;

    #[test]
    fn splus_normalizes_to_identity() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let phi = normalize_to_splus(&l, &l.grade_space(2), &NormalizeOptions::default()).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn sminus_normalizes() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let sm = l.grade_space(-2);
        let phi = normalize_to_splus(&l, &sm, &NormalizeOptions::default()).unwrap();
        assert_eq!(phi.apply_subspace(&l.grade_space(2)), sm);
    }

    #[test]
    fn round_trip_e_minus_image() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let e = e_sigma(&l, &[2, 3], &[1, 4], -1).unwrap();
        let img = e.apply_subspace(&l.grade_space(2));
        let phi = normalize_to_splus(&l, &img, &NormalizeOptions::default()).unwrap();
        assert_eq!(phi.apply_subspace(&l.grade_space(2)), img);
        let r = recover_params(&l, &img, -1).unwrap();
        assert!(r.unique);
        assert_eq!((r.a, r.s), (vec![2, 3], vec![1, 4]));
    }

    #[test]
    fn recover_e_plus() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let e = e_sigma(&l, &[4, 1], &[2, 3], 1).unwrap();
        let img = e.apply_subspace(&l.grade_space(-2));
        let r = recover_params(&l, &img, 1).unwrap();
        assert_eq!((r.a, r.s, r.unique), (vec![4, 1], vec![2, 3], true));
    }
}
