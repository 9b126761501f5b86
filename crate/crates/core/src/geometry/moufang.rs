use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::orbit::{basic_generators, enumerate_orbit};
use crate::error::{Error, Result};
use crate::exactlin::{enumerate_vectors, projective_points, Field, Subspace};
use crate::innerauto::{e_sigma, is_inner_ideal, recover_params};
use crate::report::CheckReport;
use crate::tkk::TkkAlgebra;

/// The points of a Jordan Moufang set and the verification of how they were obtained.
#[derive(Clone, Debug)]
pub struct JordanMoufangSet<F: Field> {
    /// J₊ first, then e₊(x)(J₋) in the enumeration order of x.
    pub points: Vec<Subspace<F>>,
    pub reports: Vec<CheckReport>,
}

/// {b₋ + V_{x,b} − ½V_{x,b}(x)₊ : b ∈ J}, the inner ideal attached to x.
pub fn parametrized_ideal<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem]) -> Result<Subspace<F>> {
    let f = l.field();
    let alg = l.algebra();
    let vecs = (0..alg.dim())
        .map(|k| {
            let b = alg.basis_vector(k);
            let v = alg.v_op(x, &b);
            let top = f.vscale(&f.neg(&f.half()), &v.mul_vec(x));
            let mut out = l.a_minus(&b);
            out = f.vadd(&out, &l.inst(&v)?);
            Ok(f.vadd(&out, &l.a_plus(&top)))
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(f, l.total_dim(), &vecs)
}

/// Abelian subspaces of every dimension up to `max_dim` that are inner ideals, found by a
/// depth-first search that only extends by commuting vectors.
fn abelian_inner_ideals<F: Field>(l: &TkkAlgebra<F>, max_dim: usize) -> Result<(Vec<Subspace<F>>, usize)> {
    let f = l.field();
    let n = l.total_dim();
    let pts = projective_points(f, n)?;
    let mut found = HashSet::new();
    let mut seen = HashSet::new();
    let mut max_abelian = 0;
    let mut stack: Vec<Subspace<F>> = pts.iter().map(|p| Subspace::line(f, p)).collect();
    while let Some(sub) = stack.pop() {
        max_abelian = max_abelian.max(sub.dim());
        if is_inner_ideal(l, &sub) {
            found.insert(sub.clone());
        }
        if sub.dim() >= max_dim {
            continue;
        }
        let ads: Vec<_> = sub.basis().iter().map(|b| l.ad(b)).collect();
        for p in &pts {
            if sub.contains(p) || !ads.iter().all(|m| f.vis_zero(&m.mul_vec(p))) {
                continue;
            }
            let mut vecs = sub.basis().to_vec();
            vecs.push(p.clone());
            let next = Subspace::span(f, n, &vecs)?;
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok((out, max_abelian))
}

/// Enumerates the proper inner ideals of K(J) three ways and checks that E₊(J) is regular on
/// the points other than J₊.
pub fn jordan_moufang_set<F: Field>(l: &TkkAlgebra<F>, budget: usize) -> Result<JordanMoufangSet<F>> {
    let f = l.field();
    let alg = l.algebra();
    if alg.skew().dim() != 0 {
        return Err(Error::Precondition("the Jordan Moufang set needs a trivial involution".into()));
    }
    let q = f.size().ok_or(Error::InfiniteField)?;
    let jplus = l.grade_space(1);
    let jminus = l.grade_space(-1);
    let elems: Vec<Vec<F::Elem>> = enumerate_vectors(f, alg.dim())?.collect();
    let mut points = vec![jplus.clone()];
    for x in &elems {
        points.push(parametrized_ideal(l, x)?);
    }
    let mut reports = Vec::new();

    let name = "parametrized inner ideals";
    let distinct: HashSet<&Subspace<F>> = points.iter().collect();
    let expected = q.pow(alg.dim() as u32) as usize + 1;
    let bad = points.iter().position(|p| !is_inner_ideal(l, p));
    reports.push(match bad {
        Some(i) => CheckReport::fail(name, points.len() as u64, format!("ideal {i} fails the inner-ideal test")),
        None if distinct.len() != expected => {
            CheckReport::fail(name, points.len() as u64, format!("{} distinct, expected {expected}", distinct.len()))
        }
        None => CheckReport::pass(name, points.len() as u64).with_note(format!("{expected} inner ideals")),
    });

    let name = "orbit of J+ agrees with the parametrization";
    let gens = basic_generators(l)?;
    let orbit = enumerate_orbit(&[jplus.clone()], &gens, budget);
    let oset: HashSet<&Subspace<F>> = orbit.members.iter().collect();
    reports.push(if !orbit.complete {
        CheckReport::inconclusive(name, orbit.members.len() as u64, "orbit budget exceeded")
    } else if oset != distinct {
        CheckReport::fail(name, oset.len() as u64, format!("orbit has {} members", oset.len()))
    } else {
        CheckReport::pass(name, oset.len() as u64)
    });

    let name = "exhaustive search over abelian subspaces";
    let (found, max_abelian) = abelian_inner_ideals(l, l.total_dim())?;
    let proper: HashSet<&Subspace<F>> = found.iter().filter(|s| s.dim() < l.total_dim()).collect();
    reports.push(if proper != distinct {
        CheckReport::fail(name, found.len() as u64, format!("{} proper abelian inner ideals found", proper.len()))
    } else {
        CheckReport::pass(name, found.len() as u64).with_note(format!("largest abelian subspace has dimension {max_abelian}"))
    });

    let name = "E+(J) is regular on the points other than J+";
    let mut image_of: HashMap<Subspace<F>, usize> = HashMap::new();
    let mut checked = 0;
    let mut rep = None;
    for (k, x) in elems.iter().enumerate() {
        checked += 1;
        let g = e_sigma(l, x, &f.vzero(alg.dim()), 1)?;
        if g.apply_subspace(&jplus) != jplus {
            rep = Some(CheckReport::fail(name, checked, format!("e+({}) moves J+", alg.format(x))));
            break;
        }
        let img = g.apply_subspace(&jminus);
        if img != points[k + 1] {
            rep = Some(CheckReport::fail(name, checked, format!("e+({})(J-) differs from its parametrization", alg.format(x))));
            break;
        }
        if let Some(prev) = image_of.insert(img, k) {
            rep = Some(CheckReport::fail(name, checked, format!("elements {prev} and {k} agree on J-")));
            break;
        }
    }
    reports.push(rep.unwrap_or_else(|| {
        if image_of.len() + 1 == distinct.len() {
            CheckReport::pass(name, checked).with_note(format!("{} elements", elems.len()))
        } else {
            CheckReport::fail(name, checked, format!("orbit of J- has {} members", image_of.len()))
        }
    }));
    Ok(JordanMoufangSet { points, reports })
}

/// Sampled checks for the Moufang set of a structurable division algebra with S ≠ 0: e₊(a,s)(S₋)
/// is an inner ideal, (a, s) is recovered uniquely, and the element of E₊ mapping one such ideal
/// onto another is the predicted one.
pub fn skew_moufang_set<F: Field>(l: &TkkAlgebra<F>, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let f = l.field();
    let alg = l.algebra();
    if alg.skew().dim() == 0 {
        return Err(Error::Precondition("the skew Moufang set needs S ≠ 0".into()));
    }
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_pair = || {
        let a = f.vrandom(n, &mut rng);
        let mut s = f.vzero(n);
        for b in alg.skew().basis() {
            f.vaxpy(&mut s, &f.random(&mut rng), b);
        }
        (a, s)
    };
    let sminus = l.grade_space(-2);
    let splus = l.grade_space(2);
    let mut inner = CheckReport::pass("e+(a,s)(S-) is an inner ideal", 0);
    let mut unique = CheckReport::pass("unique parameters (a,s)", 0);
    let mut trans = CheckReport::pass("E+ maps e+(a,s)(S-) onto e+(b,t)(S-) by e(b-a, t-s+psi(a,b)/2)", 0);
    for k in 0..samples {
        let (a, s) = random_pair();
        let (b, t) = random_pair();
        let g1 = e_sigma(l, &a, &s, 1)?;
        let g2 = e_sigma(l, &b, &t, 1)?;
        let i1 = g1.apply_subspace(&sminus);
        let i2 = g2.apply_subspace(&sminus);
        let witness = |a: &[F::Elem], s: &[F::Elem]| format!("sample {k}: a = {}, s = {}", alg.format(a), alg.format(s));
        if inner.passed() && !is_inner_ideal(l, &i1) {
            inner = CheckReport::fail(inner.name.clone(), k as u64 + 1, witness(&a, &s));
        }
        if unique.passed() {
            match recover_params(l, &i1, 1) {
                Ok(r) if r.unique && r.a == a && r.s == s => {}
                Ok(r) => unique = CheckReport::fail(unique.name.clone(), k as u64 + 1, format!("{} recovered {}, {}", witness(&a, &s), alg.format(&r.a), alg.format(&r.s))),
                Err(e) => unique = CheckReport::fail(unique.name.clone(), k as u64 + 1, format!("{}: {e}", witness(&a, &s))),
            }
        }
        if trans.passed() {
            // e(b,t) ∘ e(−a,−s) = e(b − a, t − s + ½ψ(a,b))
            let g = e_sigma(l, &f.vneg(&a), &f.vneg(&s), 1)?.then(&g2);
            let c = f.vsub(&b, &a);
            let u = f.vadd(&f.vsub(&t, &s), &f.vscale(&f.half(), &alg.psi(&a, &b)));
            let predicted = e_sigma(l, &c, &u, 1)?;
            if g.apply_subspace(&i1) != i2 || predicted.matrix() != g.matrix() || g.apply_subspace(&splus) != splus {
                trans = CheckReport::fail(trans.name.clone(), k as u64 + 1, witness(&a, &s));
            }
        }
    }
    let done = |r: CheckReport| if r.passed() { CheckReport::pass(r.name, samples as u64) } else { r };
    Ok(vec![done(inner), done(unique), done(trans)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::structalg::instances;

    #[test]
    fn jordan_f25_has_26_points() {
        let f = PrimeField::new(5).unwrap();
        let alg = instances::jordan_extension(f, &[3, 0]).unwrap();
        let l = TkkAlgebra::build(&alg).unwrap();
        let m = jordan_moufang_set(&l, 1000).unwrap();
        assert_eq!(m.points.len(), 26);
        for r in &m.reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn quaternion_samples() {
        let alg = instances::hurwitz_with_involution(Rationals, &[Rationals.from_i64(-1), Rationals.from_i64(-1)]).unwrap();
        let l = TkkAlgebra::build(&alg).unwrap();
        for r in skew_moufang_set(&l, 5, 0).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn kind_mismatch() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        assert!(jordan_moufang_set(&l, 10).is_err());
    }
}
